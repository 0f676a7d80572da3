class Loops {
    int sum(int[] values) {
        int acc = 0;
        for (int i = 0; i < values.length; i++) {
            acc += values[i];
        }
        return acc;
    }
}
