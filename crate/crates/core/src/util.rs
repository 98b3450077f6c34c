pub fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}
