function findIndex(list, target) {
  for (let i = 0; i < list.length; i++) {
    if (list[i] === target) {
      return i;
    }
  }
  return -1;
}
let names = ["Ali", "Bea", "Cem"];
let at = findIndex(names, "Bea");
let none = findIndex(names, "Dan");
console.log(at, none);
