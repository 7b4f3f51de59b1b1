let name = "Amina";
let greeting = "Hello, " + name + "!";
console.log(greeting);
