let i = 5;
let a = i++;
let b = ++i;
let c = i--;
let d = --i;
console.log(a, b, c, d, i);
