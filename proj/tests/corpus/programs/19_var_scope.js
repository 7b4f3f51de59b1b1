var counter = 0;
function bump() {
  counter = counter + 1;
  return counter;
}
bump();
bump();
var last = bump();
console.log(counter, last);
