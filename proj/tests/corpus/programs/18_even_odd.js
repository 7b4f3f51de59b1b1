let evens = [];
let odds = [];
for (let n = 0; n < 10; n++) {
  if (n % 2 === 0) {
    evens.push(n);
  } else {
    odds.push(n);
  }
}
console.log(evens, odds);
