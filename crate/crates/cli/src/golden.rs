//! Printed values of `q_{n,k}` and `d_{n,k}` for `n <= 4`, indexed `[n][k]`.

pub const QNK: [&[&str]; 5] = [
    &["1"],
    &["1", "1+x"],
    &["1+x", "1+2x", "1+3x+x^2"],
    &["1+4x+x^2", "1+5x+2x^2", "1+6x+4x^2", "1+7x+7x^2+x^3"],
    &["1+11x+11x^2+x^3", "1+12x+15x^2+2x^3", "1+13x+20x^2+4x^3", "1+14x+26x^2+8x^3", "1+15x+33x^2+15x^3+x^4"],
];

pub const DNK: [&[&str]; 5] = [
    &["1"],
    &["1", "0"],
    &["1+x", "x", "x"],
    &["1+4x+x^2", "3x+x^2", "2x+x^2", "x+x^2"],
    &["1+11x+11x^2+x^3", "7x+10x^2+x^3", "4x+9x^2+x^3", "2x+8x^2+x^3", "x+7x^2+x^3"],
];
