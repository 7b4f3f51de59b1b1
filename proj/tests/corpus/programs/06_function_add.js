function add(x, y) {
  return x + y;
}
let sum = add(2, 3);
let joined = add("2", 3);
console.log(sum, joined);
