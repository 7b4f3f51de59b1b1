let out = [];
for (let n = 1; n <= 15; n++) {
  if (n % 15 === 0) {
    out.push("FizzBuzz");
  } else if (n % 3 === 0) {
    out.push("Fizz");
  } else if (n % 5 === 0) {
    out.push("Buzz");
  } else {
    out.push(n);
  }
}
console.log(out.join(" "));
