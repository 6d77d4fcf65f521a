//! Schur-subset partitions of Sylvester matrix rows.
//!
//! Row `i` of `H(2)^{⊗r}` has entries `(-1)^{i·j}`, so three rows multiply
//! entry-wise to the all-ones vector iff their `r`-bit indices XOR to zero.
//! Partitioning the nonzero `r`-bit strings into such triples therefore
//! partitions the rows into Schur-sets. Even `r` leaves only `0` over; odd
//! `r` leaves five strings `{w1, w2, w3, w4, 0}` tied to the last triple
//! `{k1, k2, k3}` by `k1 = w1⊕w2 = w3⊕w4` and `k2 = w1⊕w3 = w2⊕w4`.

use std::fmt;

use crate::error::{Error, Result};

/// Row index of a Sylvester matrix written as an `r`-bit string, most
/// significant bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: u8,
    value: u32,
}

impl BitString {
    pub fn new(value: u32, width: u8) -> Self {
        assert!(
            width <= 31 && (value >> width) == 0,
            "{value} does not fit in {width} bits"
        );
        BitString { width, value }
    }

    pub fn zero(width: u8) -> Self {
        BitString::new(0, width)
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 31 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidArgument(format!("`{s}` is not a bit string")));
        }
        Ok(BitString::new(
            u32::from_str_radix(s, 2).expect("checked digits"),
            s.len() as u8,
        ))
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn index(self) -> usize {
        self.value as usize
    }

    pub fn width(self) -> u8 {
        self.width
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn xor(self, other: BitString) -> BitString {
        debug_assert_eq!(self.width, other.width);
        BitString {
            width: self.width,
            value: self.value ^ other.value,
        }
    }

    /// `prefix · self`, with `prefix` occupying the top `prefix_width` bits.
    pub fn prefixed(self, prefix: u32, prefix_width: u8) -> BitString {
        BitString::new(
            (prefix << self.width) | self.value,
            self.width + prefix_width,
        )
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width as usize)
    }
}

/// Three distinct nonzero strings with `a ⊕ b ⊕ c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchurTriple(pub [BitString; 3]);

impl SchurTriple {
    pub fn new(a: BitString, b: BitString, c: BitString) -> Result<Self> {
        let t = SchurTriple([a, b, c]);
        if a.width != b.width || b.width != c.width {
            return Err(Error::InvalidArgument(format!(
                "mixed widths in triple {t}"
            )));
        }
        if a.xor(b).xor(c).value != 0 || a.is_zero() || a == b || b == c || a == c {
            return Err(Error::InvalidArgument(format!("{t} is not a Schur triple")));
        }
        Ok(t)
    }

    pub fn sorted(self) -> SchurTriple {
        let mut v = self.0;
        v.sort();
        SchurTriple(v)
    }

    pub fn contains(&self, s: BitString) -> bool {
        self.0.contains(&s)
    }
}

impl fmt::Display for SchurTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// The last triple and the four nonzero leftovers of an odd-`r` partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distinguished {
    pub k: [BitString; 3],
    pub w: [BitString; 4],
}

impl Distinguished {
    pub fn satisfies_relations(&self) -> bool {
        let [k1, k2, k3] = self.k;
        let [w1, w2, w3, w4] = self.w;
        k1 == w1.xor(w2)
            && k1 == w3.xor(w4)
            && k2 == w1.xor(w3)
            && k2 == w2.xor(w4)
            && k1.xor(k2) == k3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurPartition {
    pub r: u32,
    /// Triples in induction order; for odd `r` the last one is `{k1, k2, k3}`.
    pub triples: Vec<SchurTriple>,
    pub remainder: Vec<BitString>,
    pub distinguished: Option<Distinguished>,
}

impl SchurPartition {
    /// Triples sorted within and then by first element, for reporting.
    pub fn sorted_triples(&self) -> Vec<SchurTriple> {
        let mut t: Vec<SchurTriple> = self.triples.iter().map(|t| t.sorted()).collect();
        t.sort_by_key(|t| t.0);
        t
    }

    pub fn sorted_remainder(&self) -> Vec<BitString> {
        let mut r = self.remainder.clone();
        r.sort();
        r
    }

    /// Every `r`-bit string appears exactly once and every triple XORs to 0.
    pub fn validate(&self) -> Result<()> {
        let width = self.r as u8;
        let mut seen = vec![false; 1usize << self.r];
        let all = self
            .triples
            .iter()
            .flat_map(|t| t.0)
            .chain(self.remainder.iter().copied());
        for s in all {
            if s.width != width {
                return Err(Error::Internal(format!(
                    "{s} has width {}, expected {width}",
                    s.width
                )));
            }
            if std::mem::replace(&mut seen[s.index()], true) {
                return Err(Error::Internal(format!("{s} appears twice")));
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Internal(format!(
                "{} is not covered",
                BitString::new(missing as u32, width)
            )));
        }
        for t in &self.triples {
            SchurTriple::new(t.0[0], t.0[1], t.0[2])?;
        }
        if let Some(d) = &self.distinguished {
            if !d.satisfies_relations() {
                return Err(Error::Internal(
                    "distinguished strings break k/w relations".into(),
                ));
            }
        }
        Ok(())
    }

    /// True when no three nonzero remainder strings XOR to zero.
    pub fn remainder_is_schur_free(&self) -> bool {
        let nz: Vec<BitString> = self
            .remainder
            .iter()
            .copied()
            .filter(|s| !s.is_zero())
            .collect();
        for a in 0..nz.len() {
            for b in a + 1..nz.len() {
                for c in b + 1..nz.len() {
                    if nz[a].xor(nz[b]).xor(nz[c]).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Expands one triple of `r`-bit strings into four triples of `(r+2)`-bit
/// strings using the prefixes 01, 10, 11 cyclically plus 00.
fn one_to_four(t: &SchurTriple) -> [SchurTriple; 4] {
    let [i1, i2, i3] = t.0;
    let p = |prefix: u32, s: BitString| s.prefixed(prefix, 2);
    [
        SchurTriple([p(0b01, i1), p(0b10, i2), p(0b11, i3)]),
        SchurTriple([p(0b01, i2), p(0b10, i3), p(0b11, i1)]),
        SchurTriple([p(0b01, i3), p(0b10, i1), p(0b11, i2)]),
        SchurTriple([p(0b00, i1), p(0b00, i2), p(0b00, i3)]),
    ]
}

/// Deterministic Schur partition of the rows of `H(2)^{⊗r}`, `r ≥ 2`.
pub fn partition_sylvester(r: u32) -> Result<SchurPartition> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "partition needs r >= 2, got {r}"
        )));
    }
    if r > 30 {
        return Err(Error::InvalidArgument(format!("r = {r} is too large")));
    }
    let b = |s: &str| BitString::parse(s).expect("literal");
    if r.is_multiple_of(2) {
        let mut triples = vec![SchurTriple([b("01"), b("10"), b("11")])];
        let mut width = 2u8;
        while (width as u32) < r {
            let zero = BitString::zero(width);
            let mut next: Vec<SchurTriple> = triples.iter().flat_map(one_to_four).collect();
            next.push(SchurTriple([
                zero.prefixed(0b01, 2),
                zero.prefixed(0b10, 2),
                zero.prefixed(0b11, 2),
            ]));
            triples = next;
            width += 2;
        }
        Ok(SchurPartition {
            r,
            triples,
            remainder: vec![BitString::zero(width)],
            distinguished: None,
        })
    } else {
        let mut triples = vec![SchurTriple([b("001"), b("100"), b("101")])];
        let mut d = Distinguished {
            k: [b("001"), b("100"), b("101")],
            w: [b("010"), b("011"), b("110"), b("111")],
        };
        let mut width = 3u8;
        while (width as u32) < r {
            let (next, nd) = odd_step(&triples, &d, width);
            triples = next;
            d = nd;
            width += 2;
        }
        let mut remainder = d.w.to_vec();
        remainder.push(BitString::zero(width));
        Ok(SchurPartition {
            r,
            triples,
            remainder,
            distinguished: Some(d),
        })
    }
}

fn odd_step(
    triples: &[SchurTriple],
    d: &Distinguished,
    width: u8,
) -> (Vec<SchurTriple>, Distinguished) {
    let (head, _last) = triples.split_at(triples.len() - 1);
    let mut out: Vec<SchurTriple> = head.iter().flat_map(one_to_four).collect();

    let [k1, k2, k3] = d.k;
    let [w1, w2, w3, w4] = d.w;
    let zero = BitString::zero(width);
    let p = |prefix: u32, s: BitString| s.prefixed(prefix, 2);
    // The 24 strings {00,01,10,11} × {k1, k2, w1..w4} split into 8 triples,
    // each triangle {k1,w1,w2}, {k1,w3,w4}, {k2,w1,w3}, {k2,w2,w4} used twice
    // with prefixes that XOR to 00.
    out.extend([
        SchurTriple([p(0b00, k1), p(0b00, w1), p(0b00, w2)]),
        SchurTriple([p(0b01, k1), p(0b10, w1), p(0b11, w2)]),
        SchurTriple([p(0b10, k1), p(0b00, w3), p(0b10, w4)]),
        SchurTriple([p(0b11, k1), p(0b11, w3), p(0b00, w4)]),
        SchurTriple([p(0b00, k2), p(0b01, w1), p(0b01, w3)]),
        SchurTriple([p(0b01, k2), p(0b11, w1), p(0b10, w3)]),
        SchurTriple([p(0b10, k2), p(0b01, w2), p(0b11, w4)]),
        SchurTriple([p(0b11, k2), p(0b10, w2), p(0b01, w4)]),
    ]);

    let nd = Distinguished {
        k: [p(0b11, zero), p(0b01, k3), p(0b10, k3)],
        w: [p(0b00, k3), p(0b11, k3), p(0b01, zero), p(0b10, zero)],
    };
    out.push(SchurTriple(nd.k));
    (out, nd)
}

/// Hadamard rows grouped by a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedRows {
    pub triples: Vec<[Vec<i8>; 3]>,
    pub remainder: Vec<Vec<i8>>,
}

/// Row `index` of `H(2)^{⊗r}` without building the matrix.
pub fn sylvester_row(index: usize, r: u32) -> Vec<i8> {
    (0..1usize << r)
        .map(|j| {
            if (index & j).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Looks up each partition member in `h`, which must be `sylvester(r)`.
pub fn rows_of(
    partition: &SchurPartition,
    h: &crate::hadamard::HadamardMatrix,
) -> Result<GroupedRows> {
    let order = 1usize << partition.r;
    if h.order() != order {
        return Err(Error::Shape(format!(
            "partition has r = {} but the matrix has order {}",
            partition.r,
            h.order()
        )));
    }
    for i in 0..order {
        for j in 0..order {
            let want = if (i & j).count_ones() % 2 == 0 { 1 } else { -1 };
            if h.get(i, j) != want {
                return Err(Error::Shape(format!(
                    "matrix is not sylvester({})",
                    partition.r
                )));
            }
        }
    }
    let row = |s: BitString| h.row(s.index()).to_vec();
    Ok(GroupedRows {
        triples: partition.triples.iter().map(|t| t.0.map(row)).collect(),
        remainder: partition.remainder.iter().map(|&s| row(s)).collect(),
    })
}

/// Five rows `f1..f5` with `f1∘f2 = f3∘f4 = f5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveRows {
    /// Row indices of `f1..f5` in the host matrix.
    pub indices: [usize; 5],
    pub rows: [Vec<i8>; 5],
}

impl FiveRows {
    pub fn holds(&self) -> bool {
        let [f1, f2, f3, f4, f5] = &self.rows;
        let mut idx = self.indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        idx.len() == 5 && crate::matrix::schur(f1, f2) == *f5 && crate::matrix::schur(f3, f4) == *f5
    }
}

/// The five Sylvester rows `f1..f5 = w1, w2, w3, w4, k1`, taken from the
/// odd-`r` structure (or the `(r-1)` structure with a leading 0 for even `r`).
pub fn five_rows_bits(r: u32) -> Result<[BitString; 5]> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!(
            "five rows need r >= 3, got {r}"
        )));
    }
    let odd = if r % 2 == 1 { r } else { r - 1 };
    let d = partition_sylvester(odd)?
        .distinguished
        .expect("odd partitions carry k/w");
    let lift = |s: BitString| if odd == r { s } else { s.prefixed(0, 1) };
    Ok([
        lift(d.w[0]),
        lift(d.w[1]),
        lift(d.w[2]),
        lift(d.w[3]),
        lift(d.k[0]),
    ])
}

pub fn five_rows(r: u32) -> Result<FiveRows> {
    let bits = five_rows_bits(r)?;
    Ok(FiveRows {
        indices: bits.map(BitString::index),
        rows: bits.map(|b| sylvester_row(b.index(), r)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{sylvester, SizeCap};

    fn strs(t: &SchurTriple) -> [String; 3] {
        t.0.map(|s| s.to_string())
    }

    #[test]
    fn base_cases() {
        let p2 = partition_sylvester(2).unwrap();
        assert_eq!(p2.triples.len(), 1);
        assert_eq!(strs(&p2.triples[0]), ["01", "10", "11"]);
        assert_eq!(p2.remainder, vec![BitString::zero(2)]);

        let p3 = partition_sylvester(3).unwrap();
        assert_eq!(strs(&p3.triples[0]), ["001", "100", "101"]);
        let rem: Vec<String> = p3.remainder.iter().map(|s| s.to_string()).collect();
        assert_eq!(rem, ["010", "011", "110", "111", "000"]);
    }

    #[test]
    fn r4_matches_listed_triples() {
        let p = partition_sylvester(4).unwrap();
        let got: Vec<[String; 3]> = p.triples.iter().map(strs).collect();
        let want = [
            ["0101", "1010", "1111"],
            ["0110", "1011", "1101"],
            ["0111", "1001", "1110"],
            ["0001", "0010", "0011"],
            ["0100", "1000", "1100"],
        ];
        assert_eq!(got, want.map(|t| t.map(String::from)));
    }

    #[test]
    fn r5_step_and_distinguished() {
        let p = partition_sylvester(5).unwrap();
        p.validate().unwrap();
        assert_eq!(p.triples.len(), 9);
        let d = p.distinguished.unwrap();
        assert_eq!(p.triples.last().unwrap().0, d.k);
        assert_eq!(d.k[0].to_string(), "11000");
        assert_eq!(d.k[1].to_string(), "01101");
        assert!(p.remainder_is_schur_free());
    }

    #[test]
    fn small_r_is_rejected() {
        assert!(partition_sylvester(1).is_err());
        assert!(five_rows(2).is_err());
    }

    #[test]
    fn rows_of_r2() {
        let p = partition_sylvester(2).unwrap();
        let g = rows_of(&p, &sylvester(2, SizeCap::default()).unwrap()).unwrap();
        assert_eq!(g.triples[0][0], vec![1, -1, 1, -1]);
        assert_eq!(g.triples[0][1], vec![1, 1, -1, -1]);
        assert_eq!(g.triples[0][2], vec![1, -1, -1, 1]);
        assert_eq!(g.remainder, vec![vec![1, 1, 1, 1]]);
        assert!(rows_of(&p, &sylvester(3, SizeCap::default()).unwrap()).is_err());
    }

    #[test]
    fn five_rows_r3_and_r4() {
        let f3 = five_rows_bits(3).unwrap().map(|b| b.to_string());
        assert_eq!(f3, ["010", "011", "110", "111", "001"]);
        let f4 = five_rows_bits(4).unwrap().map(|b| b.to_string());
        assert_eq!(f4, ["0010", "0011", "0110", "0111", "0001"]);
        assert!(five_rows(4).unwrap().holds());
    }

    #[test]
    fn bitstring_parse_and_display() {
        let s = BitString::parse("0110").unwrap();
        assert_eq!(s.value(), 6);
        assert_eq!(s.to_string(), "0110");
        assert!(BitString::parse("01a").is_err());
        assert!(BitString::parse("").is_err());
    }
}
