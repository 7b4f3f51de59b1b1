console.log(late);
let late = 1;
