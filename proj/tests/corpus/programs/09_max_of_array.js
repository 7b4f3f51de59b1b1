let values = [4, 17, 9, 23, 11];
let best = values[0];
for (let i = 1; i < values.length; i++) {
  if (values[i] > best) {
    best = values[i];
  }
}
console.log("max is", best);
