//! Dense real polynomials in the variable `s = sin(ŵx)`, stored low order first.

use crate::scalar::Real;

pub(crate) fn trim<T: Real>(mut c: Vec<T>) -> Vec<T> {
    while c.last().is_some_and(|v| *v == T::zero()) {
        c.pop();
    }
    c
}

pub(crate) fn horner<T: Real>(c: &[T], s: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &a| acc * s + a)
}

pub(crate) fn derivative<T: Real>(c: &[T]) -> Vec<T> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| T::of(j) * a)
        .collect()
}

/// `s·P(s)`.
pub(crate) fn mul_s<T: Real>(c: &[T]) -> Vec<T> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(T::zero());
    out.extend_from_slice(c);
    out
}

/// `(1 − s²)·P(s)`.
pub(crate) fn mul_one_minus_s2<T: Real>(c: &[T]) -> Vec<T> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); c.len() + 2];
    for (j, &a) in c.iter().enumerate() {
        out[j] = out[j] + a;
        out[j + 2] = out[j + 2] - a;
    }
    out
}

/// `Σ wᵢ·Pᵢ`.
pub(crate) fn combine<T: Real>(terms: &[(T, &[T])]) -> Vec<T> {
    let len = terms.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let mut out = vec![T::zero(); len];
    for (w, c) in terms {
        for (o, &a) in out.iter_mut().zip(c.iter()) {
            *o = *o + *w * a;
        }
    }
    out
}

pub(crate) fn scale<T: Real>(c: &[T], w: T) -> Vec<T> {
    c.iter().map(|&a| a * w).collect()
}
