//! Linear block codes over small finite fields.
//!
//! A [`LinearCode`] keeps a generator matrix and a cached parity-check matrix.
//! Everything that walks the codeword set is guarded: the number of words must
//! not exceed [`DEFAULT_GUARD`] unless a different guard is passed explicitly.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// Maximum number of vectors any enumeration will visit by default.
pub const DEFAULT_GUARD: u64 = 1 << 24;

/// Largest length accepted by [`LinearCode::distance_via_restriction`].
pub const RESTRICTION_SCAN_MAX_N: usize = 12;

/// Which matrix a code file lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixForm {
    Generator,
    Parity,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: Matrix,
    parity: Matrix,
}

/// `q^e` if it fits in a u128.
pub(crate) fn checked_power(q: u32, e: usize) -> Option<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| (q as u128).checked_pow(e))
}

fn guarded_count(what: &'static str, q: u32, e: usize, guard: u64) -> Result<u64> {
    match checked_power(q, e) {
        Some(c) if c <= guard as u128 => Ok(c as u64),
        Some(c) => Err(Error::guard(what, c, guard)),
        None => Err(Error::guard(what, format!("{q}^{e}"), guard)),
    }
}

/// Calls `visit` with every vector of the row space of `basis`, in
/// lexicographic order of the coefficient vectors (first row most
/// significant). Consecutive words differ by a few row updates, so the walk
/// costs O(n) per word.
pub(crate) fn for_each_in_span(field: &Field, basis: &Matrix, mut visit: impl FnMut(&[Elem])) {
    let q = field.order() as Elem;
    let rows = basis.rows();
    let mut digits = vec![0 as Elem; rows];
    let mut word = vec![0 as Elem; basis.cols()];
    loop {
        visit(&word);
        let mut pos = rows;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let old = digits[pos];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[pos] = new;
            let delta = field.sub(new, old);
            for (w, &g) in word.iter_mut().zip(basis.row(pos)) {
                *w = field.add(*w, field.mul(delta, g));
            }
            if new != 0 {
                break;
            }
        }
    }
}

fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

impl LinearCode {
    /// Builds a code from a full-rank `k x n` generator matrix.
    pub fn from_generator(field: Field, generator: Matrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || n == 0 {
            return Err(Error::InvalidCode(format!(
                "generator must be nonempty, got {k}x{n}"
            )));
        }
        check_entries(&field, &generator)?;
        let rank = generator.rank(&field);
        if rank != k {
            return Err(Error::InvalidCode(format!(
                "generator has {k} rows but rank {rank}"
            )));
        }
        let parity = generator.nullspace_basis(&field);
        Ok(LinearCode {
            field,
            n,
            k,
            generator,
            parity,
        })
    }

    /// Builds the code `{x : H x^T = 0}`. The parity-check matrix is kept as
    /// given when its rows are independent, otherwise replaced by a basis of
    /// its row space.
    pub fn from_parity_check(field: Field, parity: Matrix) -> Result<Self> {
        let n = parity.cols();
        check_entries(&field, &parity)?;
        let rank = parity.rank(&field);
        if rank >= n {
            return Err(Error::InvalidCode(format!(
                "parity-check matrix of rank {rank} leaves no codewords of length {n}"
            )));
        }
        let parity = if rank == parity.rows() {
            parity
        } else {
            parity.row_space_basis(&field)
        };
        let generator = parity.nullspace_basis(&field);
        Ok(LinearCode {
            field,
            n,
            k: n - rank,
            generator,
            parity,
        })
    }

    /// The `[n, n]` code containing every vector.
    pub fn full_space(field: Field, n: usize) -> Result<Self> {
        LinearCode::from_generator(field, Matrix::identity(n))
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(field: Field, n: usize) -> Result<Self> {
        LinearCode::from_generator(field, Matrix::new(1, n, vec![1; n])?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity
    }

    /// Number of codewords `q^k`, if representable.
    pub fn size(&self) -> Option<u128> {
        checked_power(self.field.order(), self.k)
    }

    pub fn is_codeword(&self, word: &[Elem]) -> bool {
        word.len() == self.n
            && self.parity.row_iter().all(|h| {
                h.iter()
                    .zip(word)
                    .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
                    == 0
            })
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for a code of dimension {}",
                message.len(),
                self.k
            )));
        }
        let mut word = vec![0; self.n];
        for (&m, row) in message.iter().zip(self.generator.row_iter()) {
            for (w, &g) in word.iter_mut().zip(row) {
                *w = self.field.add(*w, self.field.mul(m, g));
            }
        }
        Ok(word)
    }

    fn check_codeword_guard(&self, guard: u64) -> Result<u64> {
        guarded_count("codeword count", self.field.order(), self.k, guard)
    }

    pub(crate) fn for_each_codeword(&self, guard: u64, visit: impl FnMut(&[Elem])) -> Result<()> {
        self.check_codeword_guard(guard)?;
        for_each_in_span(&self.field, &self.generator, visit);
        Ok(())
    }

    /// All `q^k` codewords, in lexicographic order of their message vectors.
    pub fn codewords(&self) -> Result<Vec<Vec<Elem>>> {
        self.codewords_with_guard(DEFAULT_GUARD)
    }

    pub fn codewords_with_guard(&self, guard: u64) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::with_capacity(self.check_codeword_guard(guard)? as usize);
        self.for_each_codeword(guard, |w| out.push(w.to_vec()))?;
        Ok(out)
    }

    /// Minimum Hamming weight of a nonzero codeword.
    pub fn minimum_distance(&self) -> Result<usize> {
        self.minimum_distance_with_guard(DEFAULT_GUARD)
    }

    pub fn minimum_distance_with_guard(&self, guard: u64) -> Result<usize> {
        let mut best = self.n;
        self.for_each_codeword(guard, |w| {
            let wt = weight(w);
            if wt > 0 && wt < best {
                best = wt;
            }
        })?;
        Ok(best)
    }

    /// The distinct projections `x_I` of the codewords onto `coords`.
    pub fn restrict(&self, coords: &CoordSet) -> Result<BTreeSet<Vec<Elem>>> {
        coords.check_within(self.n)?;
        let idx = coords.zero_based();
        let mut out = BTreeSet::new();
        self.for_each_codeword(DEFAULT_GUARD, |w| {
            out.insert(idx.iter().map(|&i| w[i]).collect());
        })?;
        Ok(out)
    }

    /// `n - max{|I| : |C_I| < q^k}`, scanning every coordinate subset.
    /// Exponential in `n`; meant as an independent check of
    /// [`LinearCode::minimum_distance`].
    pub fn distance_via_restriction(&self) -> Result<usize> {
        if self.n > RESTRICTION_SCAN_MAX_N {
            return Err(Error::Domain(format!(
                "subset scan limited to n <= {RESTRICTION_SCAN_MAX_N}, got n = {}",
                self.n
            )));
        }
        let words = self.codewords()?;
        let total = words.len();
        let mut masks: Vec<u32> = (0..1u32 << self.n).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for mask in masks {
            let idx: Vec<usize> = (0..self.n).filter(|b| mask >> b & 1 == 1).collect();
            let distinct: HashSet<Vec<Elem>> = words
                .iter()
                .map(|w| idx.iter().map(|&i| w[i]).collect())
                .collect();
            if distinct.len() < total {
                return Ok(self.n - idx.len());
            }
        }
        unreachable!("the empty restriction has one element and k >= 1")
    }

    pub(crate) fn for_each_dual_codeword(
        &self,
        guard: u64,
        visit: impl FnMut(&[Elem]),
    ) -> Result<()> {
        guarded_count(
            "dual codeword count",
            self.field.order(),
            self.n - self.k,
            guard,
        )?;
        for_each_in_span(&self.field, &self.parity, visit);
        Ok(())
    }

    /// Every vector of the row space of the parity-check matrix.
    pub fn dual_codewords(&self) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        self.for_each_dual_codeword(DEFAULT_GUARD, |w| out.push(w.to_vec()))?;
        Ok(out)
    }

    /// Parses the plain-text code file format:
    ///
    /// ```text
    /// # comment
    /// q 2
    /// n 6 k 3
    /// matrix parity
    /// 0 0 0 1 1 1
    /// 0 1 1 0 0 1
    /// 1 0 1 0 1 0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let eof = |what: &str| Error::Parse {
            line: text.lines().count().max(1),
            message: format!("unexpected end of file, expected {what}"),
        };

        let (line, header) = lines.next().ok_or_else(|| eof("`q <order>`"))?;
        let q = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["q", order] => parse_number::<u32>(order, line)?,
            _ => return Err(parse_error(line, "expected `q <order>`")),
        };
        let field = Field::new(q).map_err(|e| parse_error(line, e.to_string()))?;

        let (line, dims) = lines
            .next()
            .ok_or_else(|| eof("`n <length> k <dimension>`"))?;
        let (n, k) = match dims.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", n, "k", k] => (
                parse_number::<usize>(n, line)?,
                parse_number::<usize>(k, line)?,
            ),
            _ => return Err(parse_error(line, "expected `n <length> k <dimension>`")),
        };
        if n == 0 || k == 0 || k > n {
            return Err(parse_error(
                line,
                format!("need 1 <= k <= n, got n = {n}, k = {k}"),
            ));
        }

        let (line, kind) = lines
            .next()
            .ok_or_else(|| eof("`matrix generator|parity`"))?;
        let form = match kind.split_whitespace().collect::<Vec<_>>()[..] {
            ["matrix", "generator"] => MatrixForm::Generator,
            ["matrix", "parity"] => MatrixForm::Parity,
            _ => {
                return Err(parse_error(
                    line,
                    "expected `matrix generator` or `matrix parity`",
                ))
            }
        };
        let matrix_line = line;

        let mut rows = Vec::new();
        for (line, row) in lines {
            let entries = row
                .split_whitespace()
                .map(|tok| {
                    let v = parse_number::<u32>(tok, line)?;
                    if field.contains(v) {
                        Ok(v as Elem)
                    } else {
                        Err(parse_error(line, format!("entry {v} is not in [0, {q})")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != n {
                return Err(parse_error(
                    line,
                    format!("matrix row has {} entries, expected n = {n}", entries.len()),
                ));
            }
            rows.push(entries);
        }

        let matrix = Matrix::from_rows(&rows, n)?;
        let rank = matrix.rank(&field);
        let code = match form {
            MatrixForm::Generator => {
                if rank != k {
                    return Err(parse_error(
                        matrix_line,
                        format!("generator has rank {rank}, declared k = {k}"),
                    ));
                }
                let g = if matrix.rows() == k {
                    matrix
                } else {
                    matrix.row_space_basis(&field)
                };
                LinearCode::from_generator(field, g)
            }
            MatrixForm::Parity => {
                if rank != n - k {
                    return Err(parse_error(
                        matrix_line,
                        format!(
                            "parity-check matrix has rank {rank}, expected n - k = {}",
                            n - k
                        ),
                    ));
                }
                if rank == 0 {
                    LinearCode::full_space(field, n)
                } else {
                    LinearCode::from_parity_check(field, matrix)
                }
            }
        };
        code.map_err(|e| parse_error(matrix_line, e.to_string()))
    }

    /// Renders the code in the file format, listing the chosen matrix.
    pub fn to_code_file(&self, form: MatrixForm, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(comment) = comment {
            for line in comment.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        let _ = writeln!(out, "q {}", self.field.order());
        let _ = writeln!(out, "n {} k {}", self.n, self.k);
        let (kind, matrix) = match form {
            MatrixForm::Generator => ("generator", &self.generator),
            MatrixForm::Parity => ("parity", &self.parity),
        };
        let _ = writeln!(out, "matrix {kind}");
        if matrix.rows() > 0 {
            let _ = writeln!(out, "{matrix}");
        }
        out
    }
}

fn check_entries(field: &Field, m: &Matrix) -> Result<()> {
    for row in m.row_iter() {
        if let Some(&bad) = row.iter().find(|&&x| !field.contains(x as u32)) {
            return Err(Error::InvalidCode(format!(
                "entry {bad} is not an element of {field}"
            )));
        }
    }
    Ok(())
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_error(line, format!("`{tok}` is not a valid number")))
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] code over {}", self.n, self.k, self.field)
    }
}
