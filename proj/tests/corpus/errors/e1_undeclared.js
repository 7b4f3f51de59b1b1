let total = 1;
total = totl + 1;
