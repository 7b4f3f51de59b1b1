let values = [0, 1, "", "x", null, undefined, [], {}];
let truthy = [];
for (let i = 0; i < values.length; i++) {
  if (values[i]) {
    truthy.push(i);
  }
}
let yes = !!"text";
console.log(truthy, yes);
