class Done {
    void f() { boolean don = false; while (!don) { if (remaining() <= 0) { don = true; } } }
}
