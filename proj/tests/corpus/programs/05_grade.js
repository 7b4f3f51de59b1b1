let score = 76;
let grade;
if (score >= 90) {
  grade = "A";
} else if (score >= 75) {
  grade = "B";
} else {
  grade = "C";
}
console.log("Grade:", grade);
