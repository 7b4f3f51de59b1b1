let pets = ["cat", "dog"];
let notList = "cat,dog";
let isList = Array.isArray(pets);
let isString = Array.isArray(notList);
let hasDog = pets.includes("dog");
let hasFish = pets.includes("fish");
let joined = pets + "";
console.log(isList, isString, hasDog, hasFish, joined);
