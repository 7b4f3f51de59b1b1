let stars = "";
let lines = [];
for (let i = 1; i <= 4; i++) {
  stars = stars + "*";
  lines.push(stars);
}
let art = lines.join("\n");
console.log(art);
