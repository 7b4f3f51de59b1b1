let fruits = ["apple", "banana"];
fruits.push("cherry");
let count = fruits.length;
let last = fruits[count - 1];
console.log(fruits, count, last);
