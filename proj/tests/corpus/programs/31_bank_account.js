let account = {owner: "Lina", balance: 100};
function deposit(acc, amount) {
  acc.balance += amount;
}
function withdraw(acc, amount) {
  if (amount > acc.balance) {
    return false;
  }
  acc.balance -= amount;
  return true;
}
deposit(account, 50);
let ok = withdraw(account, 30);
let denied = withdraw(account, 500);
console.log(account, ok, denied);
