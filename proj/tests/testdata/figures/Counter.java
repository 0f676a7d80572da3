class Counter {
    int objCount;

    public String getResult(String input) {
        int count = this.objCount;
        this.objCount++;
        return input + Integer.toString(count);
    }
}
