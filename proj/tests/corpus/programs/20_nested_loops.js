let table = [];
for (let r = 1; r <= 3; r++) {
  let row = [];
  for (let c = 1; c <= 3; c++) {
    row.push(r * c);
  }
  table.push(row);
}
console.log(table);
