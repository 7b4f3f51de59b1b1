let big = 123456789 * 1000000000000;
let huge = big * 1000;
let small = 1 / 1000000;
let smaller = small / 10;
let third = 1 / 3;
let neg = -2.50;
let fixed = (1.45).toFixed(1);
console.log(big, huge, small, smaller, third, neg, fixed);
