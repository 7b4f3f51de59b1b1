const limit = 10;
let used = 3;
limit = used;
