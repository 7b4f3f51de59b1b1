let stock = {apples: 4, pears: 0, plums: 7};
let names = Object.keys(stock);
let amounts = Object.values(stock);
let available = [];
for (let i = 0; i < names.length; i++) {
  if (stock[names[i]] > 0) {
    available.push(names[i]);
  }
}
console.log(names, amounts, available);
