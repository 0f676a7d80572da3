class Factorial {
    int f(int total) { if (total == 0) { return 1; } else { return total * f(total-1); } }
}
