let scores = [["ana", 3], ["ben", 5], ["ana", 4]];
let totals = {};
for (let i = 0; i < scores.length; i++) {
  let who = scores[i][0];
  let pts = scores[i][1];
  if (totals[who]) {
    totals[who] += pts;
  } else {
    totals[who] = pts;
  }
}
console.log(totals);
