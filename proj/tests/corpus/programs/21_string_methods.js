let raw = "  Hack Your Future  ";
let trimmed = raw.trim();
let upper = trimmed.toUpperCase();
let lower = trimmed.toLowerCase();
let hasFuture = trimmed.includes("Future");
let position = trimmed.indexOf("Your");
let words = trimmed.split(" ");
console.log(upper, lower, hasFuture, position, words.length);
