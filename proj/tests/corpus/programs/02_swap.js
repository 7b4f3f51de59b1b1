let a = 3;
let b = 8;
let tmp = a;
a = b;
b = tmp;
console.log(a, b);
