function isPrime(n) {
  if (n < 2) {
    return false;
  }
  for (let d = 2; d * d <= n; d++) {
    if (n % d === 0) {
      return false;
    }
  }
  return true;
}
let primes = [];
for (let k = 1; k <= 30; k++) {
  if (isPrime(k)) {
    primes.push(k);
  }
}
console.log(primes);
