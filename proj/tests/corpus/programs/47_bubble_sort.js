let data = [5, 1, 4, 2, 8];
let swapped = true;
while (swapped) {
  swapped = false;
  for (let i = 0; i < data.length - 1; i++) {
    if (data[i] > data[i + 1]) {
      let t = data[i];
      data[i] = data[i + 1];
      data[i + 1] = t;
      swapped = true;
    }
  }
}
console.log(data);
