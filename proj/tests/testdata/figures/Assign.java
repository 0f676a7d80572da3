class Assign {
    void f() {
        x = 7;
    }
}
