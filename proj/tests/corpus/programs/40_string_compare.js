let a = "apple";
let b = "banana";
let before = a < b;
let upperFirst = "Zebra" < "apple";
let numeric = "10" < "9";
let mixed = "10" < 9;
console.log(before, upperFirst, numeric, mixed);
