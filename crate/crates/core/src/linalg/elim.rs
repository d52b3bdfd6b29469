//! Row reduction. Over Q rows are kept as primitive integer vectors and combined
//! fraction-free; over F_p rows are normalised to a leading one. Rows are consumed in
//! input order and each takes its lowest surviving column as pivot, so the result
//! does not depend on anything but the input order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Field, Scalar};
use super::vector::SparseVec;

/// Reduced row echelon form; every row has a 1 in its pivot column and zeros in
/// every other pivot column. Rows are sorted by pivot.
#[derive(Clone, Debug)]
pub struct Rref {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row.get(&col).map(|&r| &self.rows[r])
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Clears every pivot coordinate of `v` using the rows; the remainder is zero
    /// iff `v` lies in the row span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = out.get(p).cloned() {
                out.axpy(&c.neg(), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the row basis, if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|p| v.get(*p).cloned().unwrap_or_else(|| self.field.zero()))
            .collect();
        let mut rest = v.clone();
        for (r, c) in coords.iter().enumerate() {
            rest.axpy(&c.neg(), &self.rows[r]);
        }
        if rest.is_zero() {
            Some(coords)
        } else {
            None
        }
    }
}

type Row<E> = BTreeMap<usize, E>;

trait Arith {
    type E: Clone;
    fn from_row(&self, v: &SparseVec) -> Row<Self::E>;
    /// Eliminates `col` from `row` using `pivot`, whose leading column is `col`.
    fn eliminate(&self, row: &mut Row<Self::E>, pivot: &Row<Self::E>, col: usize);
    fn tidy(&self, row: &mut Row<Self::E>);
    fn finish(&self, row: &Row<Self::E>) -> SparseVec;
}

struct IntArith;

impl Arith for IntArith {
    type E = BigInt;

    fn from_row(&self, v: &SparseVec) -> Row<BigInt> {
        let mut l = BigInt::one();
        for (_, x) in v.iter() {
            let (_, d) = x.as_fraction();
            l = l.lcm(&d);
        }
        let mut row = Row::new();
        for (i, x) in v.iter() {
            let (n, d) = x.as_fraction();
            row.insert(i, n * (&l / d));
        }
        self.tidy(&mut row);
        row
    }

    fn eliminate(&self, row: &mut Row<BigInt>, pivot: &Row<BigInt>, col: usize) {
        let a = match row.get(&col) {
            Some(a) => a.clone(),
            None => return,
        };
        let p = &pivot[&col];
        let g = a.gcd(p);
        let pa = p / &g;
        let aa = &a / &g;
        for x in row.values_mut() {
            *x *= &pa;
        }
        for (i, y) in pivot {
            let e = row.entry(*i).or_insert_with(BigInt::zero);
            *e -= &aa * y;
        }
        row.retain(|_, x| !x.is_zero());
        self.tidy(row);
    }

    fn tidy(&self, row: &mut Row<BigInt>) {
        let mut g = BigInt::zero();
        for x in row.values() {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return;
        }
        let lead_negative = row.values().next().map(|x| x.is_negative()).unwrap_or(false);
        if lead_negative {
            g = -g;
        }
        if !g.is_one() {
            for x in row.values_mut() {
                *x = &*x / &g;
            }
        }
    }

    fn finish(&self, row: &Row<BigInt>) -> SparseVec {
        let lead = row.values().next().cloned().unwrap_or_else(BigInt::one);
        SparseVec::from_pairs(
            row.iter()
                .map(|(i, x)| (*i, Scalar::from_ratio(Field::Rationals, x.clone(), lead.clone()))),
        )
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type E = u64;

    fn from_row(&self, v: &SparseVec) -> Row<u64> {
        let mut row: Row<u64> = v
            .iter()
            .map(|(i, x)| match x {
                Scalar::Mod(a, _) => (i, *a),
                Scalar::Rat(_) => unreachable!("rational entry in prime-field elimination"),
            })
            .collect();
        self.tidy(&mut row);
        row
    }

    fn eliminate(&self, row: &mut Row<u64>, pivot: &Row<u64>, col: usize) {
        let p = self.0;
        let a = match row.get(&col) {
            Some(a) => *a,
            None => return,
        };
        for (i, y) in pivot {
            let e = row.entry(*i).or_insert(0);
            *e = (*e + p - a * y % p) % p;
        }
        row.retain(|_, x| *x != 0);
    }

    fn tidy(&self, row: &mut Row<u64>) {
        let p = self.0;
        if let Some(&lead) = row.values().next() {
            if lead != 1 {
                let inv = match Scalar::Mod(lead, p).inv() {
                    Scalar::Mod(v, _) => v,
                    Scalar::Rat(_) => unreachable!(),
                };
                for x in row.values_mut() {
                    *x = *x * inv % p;
                }
            }
        }
    }

    fn finish(&self, row: &Row<u64>) -> SparseVec {
        SparseVec::from_pairs(row.iter().map(|(i, x)| (*i, Scalar::Mod(*x, self.0))))
    }
}

fn run<A: Arith>(arith: &A, field: Field, ncols: usize, input: &[SparseVec]) -> Rref {
    let mut echelon: Vec<(usize, Row<A::E>)> = Vec::new();
    let mut by_pivot: HashMap<usize, usize> = HashMap::new();
    for v in input {
        let mut row = arith.from_row(v);
        while let Some(&lead) = row.keys().next() {
            match by_pivot.get(&lead) {
                Some(&k) => {
                    let pivot = echelon[k].1.clone();
                    arith.eliminate(&mut row, &pivot, lead);
                }
                None => {
                    arith.tidy(&mut row);
                    by_pivot.insert(lead, echelon.len());
                    echelon.push((lead, row));
                    break;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..echelon.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(echelon[k].0));
    for &k in &order {
        let (col, pivot) = echelon[k].clone();
        for (j, entry) in echelon.iter_mut().enumerate() {
            if j != k && entry.1.contains_key(&col) {
                arith.eliminate(&mut entry.1, &pivot, col);
            }
        }
    }
    echelon.sort_by_key(|e| e.0);
    let pivots: Vec<usize> = echelon.iter().map(|e| e.0).collect();
    let rows: Vec<SparseVec> = echelon.iter().map(|e| arith.finish(&e.1)).collect();
    let pivot_row = pivots.iter().enumerate().map(|(r, p)| (*p, r)).collect();
    Rref { field, ncols, rows, pivots, pivot_row }
}

/// Reduced row echelon form of the given rows.
pub fn rref(field: Field, ncols: usize, rows: &[SparseVec]) -> Rref {
    match field {
        Field::Rationals => run(&IntArith, field, ncols, rows),
        Field::Prime(p) => run(&ModArith(p), field, ncols, rows),
    }
}
