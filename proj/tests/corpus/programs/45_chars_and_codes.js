let word = "banana";
let firstA = word.indexOf("a");
let letter = word.charAt(2);
let part = word.substring(1, 4);
let tail = word.slice(-3);
let starts = word.startsWith("ban");
let ends = word.endsWith("na");
let repeated = "ab".repeat(3);
console.log(firstA, letter, part, tail, starts, ends, repeated);
