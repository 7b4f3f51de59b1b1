function gcd(a, b) {
  while (b !== 0) {
    let t = b;
    b = a % b;
    a = t;
  }
  return a;
}
let g1 = gcd(48, 18);
let g2 = gcd(17, 5);
console.log(g1, g2);
