class Counter {
    int field_int_1;

    public String getResult(String param_string_1) {
        int local_int_1 = this.field_int_1;
        this.field_int_1++;
        return param_string_1 + Integer.toString(local_int_1);
    }
}
