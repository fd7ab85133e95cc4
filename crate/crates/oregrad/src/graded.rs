//! Leading-form ideals and filtration dimensions in weighted free algebras.
//!
//! Ideal membership in a free algebra is undecidable in general, so the
//! degree-`d` slice of the leading-form ideal is approximated from below:
//! it is computed as the space of degree-`d` leading forms of the span of
//! all products `u*f*v` (`f` a generator, `u`, `v` words) of weighted
//! degree at most `d + slack`. A per-degree `stabilized` flag records
//! whether growing the window by one (slack `s-1` to `s`) changed nothing,
//! which is the practical signal that the slice has converged.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::scalar::PrimeField;
use crate::word::{FreeContext, Word};

/// One degree of a [`GradedIdealTable`]: a canonical row-reduced basis of
/// the computed slice, every row homogeneous of this weighted degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSlice {
    pub degree: u32,
    /// Reduced row-echelon basis under the canonical word order, listed by
    /// descending leading word. Each row's leading coefficient is 1 and no
    /// row contains another row's leading word.
    pub rows: Vec<NCPoly>,
    /// True when slack `s` and `s - 1` produce the same rows here (always
    /// false when the table was computed with slack 0).
    pub stabilized: bool,
}

/// Per-degree row-reduced bases of the leading-form ideal up to a cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdealTable {
    ctx: FreeContext,
    cutoff: u32,
    slack: u32,
    slices: Vec<DegreeSlice>,
}

impl GradedIdealTable {
    pub fn context(&self) -> &FreeContext {
        &self.ctx
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn slack(&self) -> u32 {
        self.slack
    }

    /// Slices for degrees `0..=cutoff`, ascending.
    pub fn slices(&self) -> &[DegreeSlice] {
        &self.slices
    }

    pub fn slice(&self, d: u32) -> &DegreeSlice {
        &self.slices[d as usize]
    }

    pub fn rank(&self, d: u32) -> usize {
        self.slices[d as usize].rows.len()
    }
}

/// Filtration dimensions of the quotient by the ideal: at each degree, the
/// number of words of that weighted degree minus the table's rank there.
/// Because the table is a lower bound for the leading-form ideal, the dims
/// are upper bounds that are exact once the table has converged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationDims {
    pub dims: Vec<u64>,
    pub word_counts: Vec<u64>,
    pub ranks: Vec<usize>,
    pub stabilized: Vec<bool>,
}

/// A sparse elimination row: `(column id, coefficient)` pairs sorted by
/// descending column id, so the pivot (greatest word) comes first.
type SparseRow = Vec<(u32, u32)>;

/// `target - c * source` for descending-sorted sparse rows.
fn row_axpy(field: PrimeField, target: &SparseRow, c: u32, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        let (tc, tv) = target[i];
        let (sc, sv) = source[j];
        if tc > sc {
            out.push((tc, tv));
            i += 1;
        } else if tc < sc {
            let v = field.neg(field.mul(c, sv));
            if v != 0 {
                out.push((sc, v));
            }
            j += 1;
        } else {
            let v = field.sub(tv, field.mul(c, sv));
            if v != 0 {
                out.push((tc, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&target[i..]);
    for &(sc, sv) in &source[j..] {
        let v = field.neg(field.mul(c, sv));
        if v != 0 {
            out.push((sc, v));
        }
    }
    out
}

fn normalize_row(field: PrimeField, mut row: SparseRow) -> SparseRow {
    let lead = row[0].1;
    if lead != 1 {
        let inv = field.inv(lead).expect("pivot coefficient is nonzero");
        for e in &mut row {
            e.1 = field.mul(e.1, inv);
        }
    }
    row
}

/// Online echelon state keyed by pivot column.
struct Echelon {
    field: PrimeField,
    rows: HashMap<u32, SparseRow>,
    /// Pivot ids grouped by the weighted degree of the pivot word.
    pivots_by_degree: Vec<Vec<u32>>,
}

impl Echelon {
    fn new(field: PrimeField, max_degree: u32) -> Self {
        Echelon {
            field,
            rows: HashMap::new(),
            pivots_by_degree: vec![Vec::new(); max_degree as usize + 1],
        }
    }

    /// Reduces `row` against the state; inserts the residue if nonzero.
    fn insert(&mut self, mut row: SparseRow, degree_of: &[u32]) {
        loop {
            let Some(&(pivot, coeff)) = row.first() else {
                return;
            };
            match self.rows.get(&pivot) {
                Some(prow) => row = row_axpy(self.field, &row, coeff, prow),
                None => {
                    let row = normalize_row(self.field, row);
                    self.pivots_by_degree[degree_of[pivot as usize] as usize].push(pivot);
                    self.rows.insert(pivot, row);
                    return;
                }
            }
        }
    }

    /// The degree-`d` homogeneous projections of all rows whose pivot has
    /// weighted degree `d`.
    fn project_degree(&self, d: u32, degree_of: &[u32]) -> Vec<SparseRow> {
        self.pivots_by_degree[d as usize]
            .iter()
            .map(|pivot| {
                self.rows[pivot]
                    .iter()
                    .copied()
                    .filter(|&(col, _)| degree_of[col as usize] == d)
                    .collect()
            })
            .collect()
    }
}

/// Back-reduces a set of homogeneous rows with distinct pivots into the
/// unique reduced basis, returned by descending pivot.
fn canonicalize_block(field: PrimeField, mut rows: Vec<SparseRow>) -> Vec<SparseRow> {
    rows.sort_unstable_by_key(|r| r[0].0);
    let mut pivot_of: HashMap<u32, usize> = HashMap::new();
    for i in 0..rows.len() {
        // Earlier rows are fully reduced, so one pass over the current
        // row's entries eliminates every foreign pivot for good.
        let mut row = std::mem::take(&mut rows[i]);
        loop {
            let hit = row
                .iter()
                .find(|(col, _)| pivot_of.contains_key(col))
                .copied();
            match hit {
                Some((col, c)) => row = row_axpy(field, &row, c, &rows[pivot_of[&col]]),
                None => break,
            }
        }
        pivot_of.insert(row[0].0, i);
        rows[i] = row;
    }
    rows.sort_unstable_by(|a, b| b[0].0.cmp(&a[0].0));
    rows
}

/// Shared scaffolding for one elimination run: the word table for all
/// degrees up to `window` and the id maps.
struct WordTable {
    levels: Vec<Vec<Word>>,
    by_id: Vec<Word>,
    degree_of: Vec<u32>,
    ids: HashMap<Word, u32>,
}

impl WordTable {
    fn build(ctx: &FreeContext, window: u32) -> Self {
        let levels = ctx.words_up_to(window);
        let mut by_id = Vec::new();
        let mut degree_of = Vec::new();
        let mut ids = HashMap::new();
        for (d, bucket) in levels.iter().enumerate() {
            for w in bucket {
                ids.insert(w.clone(), by_id.len() as u32);
                by_id.push(w.clone());
                degree_of.push(d as u32);
            }
        }
        WordTable { levels, by_id, degree_of, ids }
    }
}

/// One full elimination run: per-degree canonical sparse bases for degrees
/// `0..=cutoff`, each computed from the window `degree + slack`.
fn table_rows(
    ctx: &FreeContext,
    gens: &[NCPoly],
    cutoff: u32,
    slack: u32,
) -> (WordTable, Vec<Vec<SparseRow>>) {
    let field = ctx.field();
    let window = cutoff + slack;
    let words = WordTable::build(ctx, window);

    let gen_data: Vec<(u32, Vec<(Word, u32)>)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let terms: Vec<(Word, u32)> = g.terms().map(|(w, c)| (w.clone(), c)).collect();
            (g.wdeg().expect("generator is nonzero"), terms)
        })
        .collect();

    let mut state = Echelon::new(field, window);
    let mut blocks: Vec<Vec<SparseRow>> = Vec::with_capacity(cutoff as usize + 1);

    for level in 0..=window {
        for (gdeg, terms) in &gen_data {
            if *gdeg > level {
                continue;
            }
            let rest = level - gdeg;
            for a in 0..=rest {
                let b = rest - a;
                for u in &words.levels[a as usize] {
                    for v in &words.levels[b as usize] {
                        let mut row: SparseRow = terms
                            .iter()
                            .map(|(w, c)| (words.ids[&u.concat(w).concat(v)], *c))
                            .collect();
                        row.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                        state.insert(row, &words.degree_of);
                    }
                }
            }
        }
        // Everything of weighted degree <= level is now in the span, so the
        // degree `level - slack` slice (window = degree + slack) is final.
        if level >= slack && level - slack <= cutoff {
            let d = level - slack;
            let block = state.project_degree(d, &words.degree_of);
            blocks.push(canonicalize_block(field, block));
        }
    }
    (words, blocks)
}

fn rows_to_ncpolys(ctx: &FreeContext, words: &WordTable, rows: &[SparseRow]) -> Vec<NCPoly> {
    rows.iter()
        .map(|row| {
            NCPoly::from_terms(
                ctx.clone(),
                row.iter()
                    .map(|&(col, c)| (words.by_id[col as usize].clone(), c))
                    .collect(),
            )
        })
        .collect()
}

/// The leading-form table of the ideal generated by `gens`, per degree up
/// to `cutoff`, with window slack `slack` (see the module docs). Zero
/// generators are ignored; no generators yield the zero table.
pub fn gr_ideal(
    ctx: &FreeContext,
    gens: &[NCPoly],
    cutoff: u32,
    slack: u32,
) -> Result<GradedIdealTable> {
    for g in gens {
        ctx.require_same(g.context())?;
    }
    let (words, blocks) = table_rows(ctx, gens, cutoff, slack);
    let previous = (slack > 0).then(|| table_rows(ctx, gens, cutoff, slack - 1).1);

    let slices = blocks
        .iter()
        .enumerate()
        .map(|(d, block)| {
            let stabilized = previous
                .as_ref()
                .map_or(false, |prev| prev[d] == *block);
            DegreeSlice {
                degree: d as u32,
                rows: rows_to_ncpolys(ctx, &words, block),
                stabilized,
            }
        })
        .collect();

    Ok(GradedIdealTable {
        ctx: ctx.clone(),
        cutoff,
        slack,
        slices,
    })
}

/// Dimensions of the filtration quotients of the algebra modulo the ideal:
/// word count minus table rank, degree by degree.
pub fn quotient_dims(table: &GradedIdealTable) -> FiltrationDims {
    let levels = table.ctx.words_up_to(table.cutoff);
    let mut dims = Vec::new();
    let mut word_counts = Vec::new();
    let mut ranks = Vec::new();
    let mut stabilized = Vec::new();
    for slice in &table.slices {
        let count = levels[slice.degree as usize].len();
        word_counts.push(count as u64);
        ranks.push(slice.rows.len());
        dims.push((count - slice.rows.len()) as u64);
        stabilized.push(slice.stabilized);
    }
    FiltrationDims { dims, word_counts, ranks, stabilized }
}

/// One summand of a certificate line: `coeff * left * gen * right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: u32,
    pub left: Word,
    pub gen_index: usize,
    pub right: Word,
}

/// An ideal-containment certificate: line `i` expresses the `i`-th
/// generator of the smaller ideal as a sum of sandwiched generators of the
/// larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCertificate {
    pub lines: Vec<Vec<CertTerm>>,
}

/// Per-degree outcome of a leading-form comparison of two ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDegreeReport {
    pub degree: u32,
    /// Whether the first table's row space lies inside the second's.
    pub contained: bool,
    /// Containment with strictly larger rank on the second side.
    pub strict: bool,
    pub rank_sub: usize,
    pub rank_super: usize,
}

/// Reduces `row` against a canonical basis; true when it vanishes.
fn reduces_to_zero(basis: &[NCPoly], row: &NCPoly) -> bool {
    let by_lead: HashMap<&Word, &NCPoly> = basis
        .iter()
        .map(|r| (r.leading_word().expect("basis rows are nonzero").0, r))
        .collect();
    let mut r = row.clone();
    loop {
        let step = match r.leading_word() {
            None => return true,
            Some((lw, c)) => by_lead.get(lw).map(|b| b.scale(c)),
        };
        match step {
            None => return false,
            Some(delta) => r = &r - &delta,
        }
    }
}

/// Verifies the certificate, then compares the two leading-form tables
/// degree by degree.
///
/// The certificate may express a generator through products of higher
/// weighted degree that cancel; the second table's window is widened by the
/// largest such excess so that verified containment always shows up in the
/// row spaces.
pub fn chain_compare(
    ctx: &FreeContext,
    gens_sub: &[NCPoly],
    gens_super: &[NCPoly],
    certificate: &ContainmentCertificate,
    cutoff: u32,
    slack: u32,
) -> Result<Vec<ChainDegreeReport>> {
    for g in gens_sub.iter().chain(gens_super) {
        ctx.require_same(g.context())?;
    }
    if certificate.lines.len() != gens_sub.len() {
        return Err(Error::InvalidCertificate(format!(
            "{} lines for {} generators",
            certificate.lines.len(),
            gens_sub.len()
        )));
    }

    let mut excess = 0u32;
    for (i, (gen, line)) in gens_sub.iter().zip(&certificate.lines).enumerate() {
        let mut sum = NCPoly::zero(ctx.clone());
        for term in line {
            let g = gens_super.get(term.gen_index).ok_or_else(|| {
                Error::InvalidCertificate(format!(
                    "line {i} references generator {} of the larger ideal, which does not exist",
                    term.gen_index
                ))
            })?;
            let part = g.sandwich(&term.left, &term.right).scale(term.coeff);
            if let Some(d) = part.wdeg() {
                let target = gen.wdeg().unwrap_or(0);
                excess = excess.max(d.saturating_sub(target));
            }
            sum = &sum + &part;
        }
        if sum != *gen {
            return Err(Error::InvalidCertificate(format!(
                "line {i} sums to {sum}, expected {gen}"
            )));
        }
    }

    let table_sub = gr_ideal(ctx, gens_sub, cutoff, slack)?;
    let table_super = gr_ideal(ctx, gens_super, cutoff, slack + excess)?;

    let reports = (0..=cutoff)
        .map(|d| {
            let sub = &table_sub.slice(d).rows;
            let sup = &table_super.slice(d).rows;
            let contained = sub.iter().all(|row| reduces_to_zero(sup, row));
            ChainDegreeReport {
                degree: d,
                contained,
                strict: contained && sub.len() < sup.len(),
                rank_sub: sub.len(),
                rank_super: sup.len(),
            }
        })
        .collect();
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::PrimeField;

    fn ctx(p: u64, weights: &[u32]) -> FreeContext {
        FreeContext::new(PrimeField::new(p).unwrap(), weights.to_vec()).unwrap()
    }

    fn gen(c: &FreeContext, i: u16) -> NCPoly {
        NCPoly::generator(c.clone(), i).unwrap()
    }

    /// gens = {x1x2 - x2x1 - 1}, weights (1,1): the classical fixture whose
    /// quotient has dimensions d+1 per degree.
    fn weyl_gen(c: &FreeContext) -> NCPoly {
        let x1 = gen(c, 0);
        let x2 = gen(c, 1);
        &(&(&x1 * &x2) - &(&x2 * &x1)) - &NCPoly::one(c.clone())
    }

    #[test]
    fn weyl_fixture_dims_and_stabilization() {
        let c = ctx(2, &[1, 1]);
        let table = gr_ideal(&c, &[weyl_gen(&c)], 4, 4).unwrap();
        let dims = quotient_dims(&table);
        assert_eq!(dims.dims, vec![1, 2, 3, 4, 5]);
        assert!(dims.stabilized.iter().all(|&s| s));
        assert_eq!(dims.word_counts, vec![1, 2, 4, 8, 16]);
        // Every basis row is homogeneous of its slice degree.
        for slice in table.slices() {
            for row in &slice.rows {
                assert!(row.is_homogeneous());
                assert_eq!(row.wdeg(), Some(slice.degree));
            }
        }
    }

    #[test]
    fn homogeneous_generator_reproduces_ideal_slices() {
        // gens = {x1^2}: slice d = span of degree-d words containing x1x1.
        let c = ctx(3, &[1, 1]);
        let g = &gen(&c, 0) * &gen(&c, 0);
        let table = gr_ideal(&c, &[g.clone()], 4, 2).unwrap();
        for d in 0..=4u32 {
            let expected: Vec<Word> = c
                .words_of_degree(d)
                .into_iter()
                .filter(|w| w.letters().windows(2).any(|p| p == [0, 0]))
                .collect();
            assert_eq!(table.rank(d), expected.len(), "degree {d}");
            // Each word containing the factor must reduce to zero.
            for w in expected {
                let row = NCPoly::from_word(c.clone(), w);
                assert!(reduces_to_zero(&table.slice(d).rows, &row));
            }
        }
    }

    #[test]
    fn inhomogeneous_cancellation_is_found_with_slack() {
        // gens = {x1^2 - x2}, weights (1,1): the difference
        // (x1^2 - x2)x1 - x1(x1^2 - x2) = x1x2 - x2x1 needs slack >= 1 to
        // appear at degree 2.
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let g = &(&x1 * &x1) - &x2;
        let comm = &(&x1 * &x2) - &(&x2 * &x1);

        let tight = gr_ideal(&c, &[g.clone()], 3, 0).unwrap();
        assert!(!reduces_to_zero(&tight.slice(2).rows, &comm));

        let table = gr_ideal(&c, &[g.clone()], 3, 1).unwrap();
        let leading = g.leading_form().unwrap();
        assert!(reduces_to_zero(&table.slice(2).rows, &leading));
        assert!(reduces_to_zero(&table.slice(2).rows, &comm), "commutator found");
    }

    #[test]
    fn slack_growth_is_monotone() {
        let c = ctx(2, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let g = &(&x1 * &x1) - &x2;
        let small = gr_ideal(&c, &[g.clone()], 3, 1).unwrap();
        let large = gr_ideal(&c, &[g], 3, 2).unwrap();
        for d in 0..=3u32 {
            for row in &small.slice(d).rows {
                assert!(
                    reduces_to_zero(&large.slice(d).rows, row),
                    "slack-1 rows inside slack-2 space at degree {d}"
                );
            }
        }
    }

    #[test]
    fn table_rows_stay_closed_under_generator_multiplication() {
        let c = ctx(2, &[1, 1]);
        let table = gr_ideal(&c, &[weyl_gen(&c)], 4, 4).unwrap();
        for slice in table.slices() {
            for row in &slice.rows {
                for i in 0..2u16 {
                    let shifted = slice.degree + c.weight(i);
                    if shifted > table.cutoff() {
                        continue;
                    }
                    let left = row.sandwich(&Word::letter(i), &Word::one());
                    let right = row.sandwich(&Word::one(), &Word::letter(i));
                    assert!(reduces_to_zero(&table.slice(shifted).rows, &left));
                    assert!(reduces_to_zero(&table.slice(shifted).rows, &right));
                }
            }
        }
    }

    #[test]
    fn empty_generators_give_the_zero_table() {
        let c = ctx(3, &[1, 2]);
        let table = gr_ideal(&c, &[], 4, 2).unwrap();
        for d in 0..=4u32 {
            assert_eq!(table.rank(d), 0);
            assert!(table.slice(d).stabilized);
        }
        let dims = quotient_dims(&table);
        assert_eq!(dims.dims, dims.word_counts);
        // Weights (1,2) word counts follow the two-step recurrence.
        assert_eq!(dims.word_counts, vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn zero_slack_reports_unstabilized() {
        let c = ctx(2, &[1, 1]);
        let table = gr_ideal(&c, &[weyl_gen(&c)], 2, 0).unwrap();
        assert!(table.slices().iter().all(|s| !s.stabilized));
    }

    #[test]
    fn determinism_bit_for_bit() {
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let gens = vec![
            &(&x1 * &x2) - &NCPoly::one(c.clone()),
            &(&x2 * &x2) - &x1,
        ];
        let a = gr_ideal(&c, &gens, 4, 3).unwrap();
        let b = gr_ideal(&c, &gens, 4, 3).unwrap();
        assert_eq!(a, b);
        for (sa, sb) in a.slices().iter().zip(b.slices()) {
            for (ra, rb) in sa.rows.iter().zip(&sb.rows) {
                assert_eq!(ra.to_string(), rb.to_string());
            }
        }
    }

    #[test]
    fn chain_compare_homogeneous_powers() {
        // (x1^2) inside (x1): contained everywhere, strict at degree 1.
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let sub = vec![&x1 * &x1];
        let sup = vec![x1.clone()];
        let cert = ContainmentCertificate {
            lines: vec![vec![CertTerm {
                coeff: 1,
                left: Word::letter(0),
                gen_index: 0,
                right: Word::one(),
            }]],
        };
        let reports = chain_compare(&c, &sub, &sup, &cert, 4, 2).unwrap();
        assert!(reports.iter().all(|r| r.contained));
        let strict: Vec<u32> = reports.iter().filter(|r| r.strict).map(|r| r.degree).collect();
        assert!(strict.contains(&1));
        assert_eq!(reports[0].rank_sub, 0);
    }

    #[test]
    fn chain_compare_equal_ideals() {
        let c = ctx(2, &[1, 1]);
        let g = weyl_gen(&c);
        let cert = ContainmentCertificate {
            lines: vec![vec![CertTerm {
                coeff: 1,
                left: Word::one(),
                gen_index: 0,
                right: Word::one(),
            }]],
        };
        let reports = chain_compare(&c, &[g.clone()], &[g], &cert, 4, 4).unwrap();
        for r in &reports {
            assert!(r.contained);
            assert!(!r.strict);
            assert_eq!(r.rank_sub, r.rank_super);
        }
    }

    #[test]
    fn chain_compare_weyl_inside_augmented() {
        // (f) inside (f, x1) where f is the commutator relation: strict at
        // degree 1 because x1 enters the larger table.
        let c = ctx(2, &[1, 1]);
        let f = weyl_gen(&c);
        let x1 = gen(&c, 0);
        let cert = ContainmentCertificate {
            lines: vec![vec![CertTerm {
                coeff: 1,
                left: Word::one(),
                gen_index: 0,
                right: Word::one(),
            }]],
        };
        let reports =
            chain_compare(&c, &[f.clone()], &[f, x1], &cert, 4, 4).unwrap();
        assert!(reports.iter().all(|r| r.contained));
        assert!(reports.iter().any(|r| r.degree == 1 && r.strict));
    }

    #[test]
    fn bad_certificates_are_rejected() {
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        // Wrong expression: claims x1^2 = x2 * x1.
        let cert = ContainmentCertificate {
            lines: vec![vec![CertTerm {
                coeff: 1,
                left: Word::letter(1),
                gen_index: 0,
                right: Word::one(),
            }]],
        };
        let r = chain_compare(&c, &[&x1 * &x1], &[x1.clone()], &cert, 2, 1);
        assert!(matches!(r, Err(Error::InvalidCertificate(_))));
        // Out-of-range generator index.
        let cert = ContainmentCertificate {
            lines: vec![vec![CertTerm {
                coeff: 1,
                left: Word::one(),
                gen_index: 5,
                right: Word::one(),
            }]],
        };
        let r = chain_compare(&c, &[x1.clone()], &[x2], &cert, 2, 1);
        assert!(matches!(r, Err(Error::InvalidCertificate(_))));
    }
}
