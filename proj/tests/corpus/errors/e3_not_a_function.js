let count = 3;
console.log("before");
count();
