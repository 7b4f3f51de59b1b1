let n = 7;
let lines = [];
let i = 1;
while (i <= 5) {
  lines.push(n + " x " + i + " = " + n * i);
  i = i + 1;
}
console.log(lines.join(", "));
