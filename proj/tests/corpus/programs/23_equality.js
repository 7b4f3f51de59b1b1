let loose = 1 == "1";
let strict = 1 === "1";
let nullish = null == undefined;
let strictNull = null === undefined;
let notEq = "a" != "b";
let zero = 0 == false;
console.log(loose, strict, nullish, strictNull, notEq, zero);
