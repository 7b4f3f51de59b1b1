let school = {
  name: "Code School",
  classes: [
    {title: "JS", students: 12},
    {title: "HTML", students: 9}
  ]
};
school.classes[1].students = 10;
school.classes.push({title: "CSS", students: 7});
let total = 0;
for (let i = 0; i < school.classes.length; i++) {
  total += school.classes[i].students;
}
console.log(school.classes.length, total);
