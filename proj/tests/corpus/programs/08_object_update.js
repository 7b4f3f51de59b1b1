let person = {name: "Sami", age: 29};
person.age = person.age + 1;
person.city = "Ghent";
let summary = person.name + " is " + person.age;
console.log(person);
console.log(summary);
