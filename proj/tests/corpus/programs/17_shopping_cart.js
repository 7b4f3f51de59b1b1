let cart = [
  {item: "bread", price: 2.5, qty: 2},
  {item: "milk", price: 1.2, qty: 3},
  {item: "cheese", price: 6, qty: 1}
];
let total = 0;
for (let i = 0; i < cart.length; i++) {
  total += cart[i].price * cart[i].qty;
}
let label = "Total: " + total.toFixed(2);
console.log(label);
