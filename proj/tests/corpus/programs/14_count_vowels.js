let sentence = "learning to code is fun";
let vowels = 0;
for (let i = 0; i < sentence.length; i++) {
  let ch = sentence[i];
  if (ch === "a" || ch === "e" || ch === "i" || ch === "o" || ch === "u") {
    vowels++;
  }
}
console.log("vowels:", vowels);
