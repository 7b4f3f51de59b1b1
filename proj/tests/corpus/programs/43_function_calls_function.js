function square(x) {
  return x * x;
}
function sumOfSquares(a, b) {
  return square(a) + square(b);
}
let result = sumOfSquares(3, 4);
let hyp = Math.sqrt(result);
console.log(result, hyp);
