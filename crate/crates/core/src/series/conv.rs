//! Truncated convolution of residue vectors.
//!
//! This is the seam for the dense-multiplication backend. `convolve_mod`
//! picks schoolbook multiplication for short inputs and a number-theoretic
//! transform over two or three NTT-friendly primes (recombined by CRT) for
//! long ones. `schoolbook_mod` stays public so tests can use it as an oracle
//! for the transform path.

const P1: u32 = 998_244_353; // 119 * 2^23 + 1
const P2: u32 = 167_772_161; // 5 * 2^25 + 1
const P3: u32 = 469_762_049; // 7 * 2^26 + 1
const GENERATOR: u64 = 3;
const MAX_LOG_LEN: u32 = 23;

/// Below this many output coefficients (times the shorter input) the
/// quadratic loop wins.
const SCHOOLBOOK_WORK: usize = 1 << 16;

/// Product of `a` and `b` modulo `modulus`, truncated to `out_len` terms.
pub fn convolve_mod(a: &[u32], b: &[u32], modulus: u32, out_len: usize) -> Vec<u32> {
    let la = a.len().min(out_len);
    let lb = b.len().min(out_len);
    if la == 0 || lb == 0 {
        return vec![0; out_len];
    }
    let (a, b) = (&a[..la], &b[..lb]);
    if la.min(lb) <= 32 || la.saturating_mul(lb) <= SCHOOLBOOK_WORK {
        return schoolbook_mod(a, b, modulus, out_len);
    }
    ntt_convolve(a, b, modulus, out_len)
}

/// Squaring shares the forward transforms.
pub fn square_mod(a: &[u32], modulus: u32, out_len: usize) -> Vec<u32> {
    convolve_mod(a, a, modulus, out_len)
}

pub fn schoolbook_mod(a: &[u32], b: &[u32], modulus: u32, out_len: usize) -> Vec<u32> {
    let m = modulus as u64;
    let mut acc = vec![0u128; out_len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 || i >= out_len {
            continue;
        }
        let x = x as u64;
        let lim = (out_len - i).min(b.len());
        for (slot, &y) in acc[i..i + lim].iter_mut().zip(&b[..lim]) {
            *slot += (x * y as u64) as u128;
        }
    }
    acc.into_iter().map(|v| (v % m as u128) as u32).collect()
}

fn ntt_convolve(a: &[u32], b: &[u32], modulus: u32, out_len: usize) -> Vec<u32> {
    let full = a.len() + b.len() - 1;
    let needed = full.min(2 * out_len);
    let len = needed.next_power_of_two();
    assert!(len.trailing_zeros() <= MAX_LOG_LEN, "convolution length {len} exceeds the transform capacity");
    let same = std::ptr::eq(a.as_ptr(), b.as_ptr()) && a.len() == b.len();

    // Largest possible true coefficient decides how many primes we need.
    let bound = (a.len().min(b.len()) as u128) * (modulus as u128 - 1).pow(2);
    let two_primes = (P1 as u128) * (P2 as u128);
    if bound < two_primes {
        let (r1, r2) =
            rayon::join(|| transform_product::<P1>(a, b, same, len), || transform_product::<P2>(a, b, same, len));
        let p1_inv = inv_const(P1 as u64 % P2 as u64, P2 as u64);
        (0..out_len)
            .map(|i| {
                if i >= full {
                    return 0;
                }
                let (x1, x2) = (r1[i] as u64, r2[i] as u64);
                let t = (x2 + P2 as u64 - x1 % P2 as u64) % P2 as u64 * p1_inv % P2 as u64;
                ((x1 + P1 as u64 * t) % modulus as u64) as u32
            })
            .collect()
    } else {
        assert!(bound < two_primes * P3 as u128, "coefficient bound too large for CRT");
        let ((r1, r2), r3) = rayon::join(
            || rayon::join(|| transform_product::<P1>(a, b, same, len), || transform_product::<P2>(a, b, same, len)),
            || transform_product::<P3>(a, b, same, len),
        );
        let p1_inv_p2 = inv_const(P1 as u64 % P2 as u64, P2 as u64);
        let p12_mod_p3 = (P1 as u64 * P2 as u64) % P3 as u64;
        let p12_inv_p3 = inv_const(p12_mod_p3, P3 as u64);
        let m = modulus as u64;
        let p12_mod_m = ((P1 as u128 * P2 as u128) % m as u128) as u64;
        (0..out_len)
            .map(|i| {
                if i >= full {
                    return 0;
                }
                let (x1, x2, x3) = (r1[i] as u64, r2[i] as u64, r3[i] as u64);
                let t2 = (x2 + P2 as u64 - x1 % P2 as u64) % P2 as u64 * p1_inv_p2 % P2 as u64;
                let x12 = x1 + P1 as u64 * t2;
                let t3 = (x3 + P3 as u64 - x12 % P3 as u64) % P3 as u64 * p12_inv_p3 % P3 as u64;
                ((x12 % m + p12_mod_m * t3 % m) % m) as u32
            })
            .collect()
    }
}

fn transform_product<const P: u32>(a: &[u32], b: &[u32], same: bool, len: usize) -> Vec<u32> {
    let roots = Field::<P>::root_table(len, false);
    let load = |src: &[u32]| {
        let mut v = vec![0u32; len];
        for (dst, &x) in v.iter_mut().zip(src) {
            *dst = Field::<P>::to_mont(x % P);
        }
        v
    };
    let mut fa = load(a);
    forward::<P>(&mut fa, &roots);
    if same {
        for x in fa.iter_mut() {
            *x = Field::<P>::mul(*x, *x);
        }
    } else {
        let mut fb = load(b);
        forward::<P>(&mut fb, &roots);
        for (x, &y) in fa.iter_mut().zip(&fb) {
            *x = Field::<P>::mul(*x, y);
        }
    }
    drop(roots);
    let inv_roots = Field::<P>::root_table(len, true);
    inverse::<P>(&mut fa, &inv_roots);
    let n_inv = Field::<P>::to_mont(crate::arith::pow_mod(len as u64, P as u64 - 2, P as u64) as u32);
    for x in fa.iter_mut() {
        *x = Field::<P>::from_mont(Field::<P>::mul(*x, n_inv));
    }
    fa
}

fn inv_const(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Montgomery arithmetic modulo an NTT prime `P < 2^30`, residues kept in
/// `[0, P)`.
struct Field<const P: u32>;

impl<const P: u32> Field<P> {
    /// `−P^{−1} mod 2^32`
    const NEG_INV: u32 = {
        let mut inv = P;
        let mut i = 0;
        while i < 5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(P.wrapping_mul(inv)));
            i += 1;
        }
        inv.wrapping_neg()
    };
    /// `2^64 mod P`
    const R2: u32 = ((1u128 << 64) % P as u128) as u32;

    #[inline(always)]
    fn redc(t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(Self::NEG_INV);
        let u = ((t + m as u64 * P as u64) >> 32) as u32;
        if u >= P {
            u - P
        } else {
            u
        }
    }

    #[inline(always)]
    fn mul(a: u32, b: u32) -> u32 {
        Self::redc(a as u64 * b as u64)
    }

    fn to_mont(x: u32) -> u32 {
        Self::mul(x, Self::R2)
    }

    fn from_mont(x: u32) -> u32 {
        Self::redc(x as u64)
    }

    /// Twiddles for every stage, laid out so that the stage with butterfly
    /// span `half` reads `table[half..2·half]`.
    fn root_table(len: usize, inverse: bool) -> Vec<u32> {
        let mut table = vec![0u32; len.max(2)];
        let mut half = 1;
        while half < len {
            let mut w = crate::arith::pow_mod(GENERATOR, (P as u64 - 1) / (2 * half) as u64, P as u64);
            if inverse {
                w = crate::arith::pow_mod(w, P as u64 - 2, P as u64);
            }
            let w = Self::to_mont(w as u32);
            let mut x = Self::to_mont(1);
            for slot in &mut table[half..2 * half] {
                *slot = x;
                x = Self::mul(x, w);
            }
            half <<= 1;
        }
        table
    }
}

/// Decimation-in-frequency transform: natural-order input, bit-reversed
/// output.
fn forward<const P: u32>(a: &mut [u32], roots: &[u32]) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut half = n / 2;
    while half >= 1 {
        let tw = &roots[half..2 * half];
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let (x, y) = (*u, *v);
                let s = x + y;
                *u = if s >= P { s - P } else { s };
                *v = Field::<P>::mul(if x >= y { x - y } else { x + P - y }, t);
            }
        }
        half /= 2;
    }
}

/// Decimation-in-time transform with inverse twiddles: bit-reversed input,
/// natural-order output (unscaled).
fn inverse<const P: u32>(a: &mut [u32], roots: &[u32]) {
    let n = a.len();
    let mut half = 1;
    while half < n {
        let tw = &roots[half..2 * half];
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let x = *u;
                let y = Field::<P>::mul(*v, t);
                let s = x + y;
                *u = if s >= P { s - P } else { s };
                *v = if x >= y { x - y } else { x + P - y };
            }
        }
        half <<= 1;
    }
}
