let queue = [1, 2, 3];
queue.unshift(0);
let first = queue.shift();
let popped = queue.pop();
let found = queue.indexOf(2);
let missing = queue.indexOf(9);
let copy = queue.slice(0, 1);
let both = queue.concat([7, 8]);
console.log(queue, first, popped, found, missing, copy, both);
