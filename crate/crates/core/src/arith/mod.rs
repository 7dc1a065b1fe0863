//! Primes and Λ, Landau ensemble sums, the Euler product, Hurwitz zeta and
//! Dirichlet characters.

mod characters;
mod hurwitz;
mod landau;
mod primes;

pub use characters::{characters, DirichletCharacter, MAX_CHARACTER_MODULUS};
pub use hurwitz::{
    dirichlet_series_direct, euler_product, euler_tail_bound, hurwitz, hurwitz_regular, l_function,
};
pub use landau::{
    candidate_zeros, ensemble_real_sum, expected_prime_change, invert_primes_to_zeros,
    landau_cosine_sum, local_minima, GridMinimum, LandauRow, LandauTable, PrimeWeight,
};
pub use primes::{mangoldt, prime_power_base, sieve, MAX_SIEVE};
