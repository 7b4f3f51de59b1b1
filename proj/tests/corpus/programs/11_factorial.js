function factorial(n) {
  if (n <= 1) {
    return 1;
  }
  return n * factorial(n - 1);
}
let f5 = factorial(5);
let f10 = factorial(10);
console.log(f5, f10);
