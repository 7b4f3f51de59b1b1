let user = {name: "Ola"};
let city = user.address.city;
