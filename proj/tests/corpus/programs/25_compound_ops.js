let n = 10;
n += 5;
n -= 3;
n *= 2;
n /= 4;
n %= 4;
let s = "a";
s += "b";
s += 1;
console.log(n, s);
