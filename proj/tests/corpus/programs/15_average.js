let marks = [12, 15, 9, 18];
let sum = 0;
for (let i = 0; i < marks.length; i++) {
  sum += marks[i];
}
let average = sum / marks.length;
let rounded = Math.round(average * 10) / 10;
console.log(average, rounded);
