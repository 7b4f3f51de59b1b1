let fib = [0, 1];
while (fib.length < 12) {
  let n = fib.length;
  fib.push(fib[n - 1] + fib[n - 2]);
}
let twelfth = fib[11];
console.log(fib);
