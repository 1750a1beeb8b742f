//! Linear index codes over GF(2): construction, encoding, decoding, and
//! verification.
//!
//! A broadcast of length l serves n receivers when receiver i can recover
//! bit x_i from the l broadcast bits plus the bits of its neighbors. Both
//! constructors emit the decoding recipe alongside the encoder: one takes a
//! proper coloring of the complement and XORs each color class into one
//! broadcast bit, the other takes a representing matrix (unit diagonal,
//! support inside the edge set) and broadcasts a row basis, expressing each
//! row in that basis. The code length of the matrix construction equals the
//! matrix rank, so minimizing rank minimizes broadcast length.

use crate::gf2::{represents, BitMatrix, BitVector};
use crate::graph::Graph;
use crate::coloring::Coloring;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest n for which exhaustive verification over all 2^n words is allowed.
pub const EXHAUSTIVE_VERIFY_CAP: usize = 20;

/// Decoding recipe of one receiver: coefficients over the broadcast bits and
/// (neighbor, coefficient) pairs over its side information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoder {
    pub coefficients: BitVector,
    pub side: Vec<(usize, bool)>,
}

/// A linear index code: x_i = <c_i, E x> + sum of a_ij x_j over the side
/// pairs of receiver i, for every word x in F2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearIndexCode {
    pub n: usize,
    pub length: usize,
    pub encoder: BitMatrix,
    pub decoders: Vec<Decoder>,
}

/// One broadcast bit per color class of a proper coloring of complement(g):
/// the XOR over the class. Receiver i selects its class bit and cancels its
/// classmates, which are g-neighbors because they are non-adjacent in the
/// complement. Length equals the color count.
pub fn code_from_coloring(g: &Graph, complement_coloring: &Coloring) -> Result<LinearIndexCode> {
    let n = g.n();
    if !complement_coloring.is_proper(&g.complement()) {
        return Err(Error::Input(
            "coloring is not a proper coloring of the complement graph".into(),
        ));
    }
    let length = complement_coloring.count;
    let mut rows = vec![BitVector::zeros(n); length];
    for (v, &c) in complement_coloring.colors.iter().enumerate() {
        rows[c].set(v, true);
    }
    let encoder = BitMatrix::from_rows(rows)?;
    let decoders = (0..n)
        .map(|i| {
            let class = complement_coloring.colors[i];
            let mut coefficients = BitVector::zeros(length);
            coefficients.set(class, true);
            let side = (0..n)
                .filter(|&j| j != i && complement_coloring.colors[j] == class)
                .map(|j| (j, true))
                .collect();
            Decoder { coefficients, side }
        })
        .collect();
    Ok(LinearIndexCode { n, length, encoder, decoders })
}

/// Broadcasts a row basis of a representing matrix. The basis is chosen by
/// lowest original row index; receiver i expresses row i of the matrix in
/// the basis to get its broadcast coefficients, and its side pairs are the
/// off-diagonal support of row i, which the representation property keeps
/// inside the neighborhood. Length equals the matrix rank.
pub fn code_from_matrix(a: &BitMatrix, g: &Graph) -> Result<LinearIndexCode> {
    let n = g.n();
    if !represents(a, g)? {
        return Err(Error::Input("matrix does not represent the graph".into()));
    }
    // Greedy basis: keep each row that grows the span. `reduced` holds the
    // eliminated form of each kept row, `combo[t]` the basis coefficients
    // that produce reduced[t] from the kept original rows.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut reduced: Vec<BitVector> = Vec::new();
    let mut combo: Vec<Vec<bool>> = Vec::new();
    let mut pivot_col: Vec<usize> = Vec::new();
    for r in 0..n {
        let (rem, coeffs) = reduce_against(a.row(r), &reduced, &combo, &pivot_col);
        if let Some(p) = rem.first_one() {
            basis_rows.push(r);
            reduced.push(rem);
            let mut own = coeffs;
            own.push(true);
            combo.iter_mut().for_each(|c| c.push(false));
            combo.push(own);
            pivot_col.push(p);
        }
    }
    let length = basis_rows.len();
    let encoder = BitMatrix::from_rows(basis_rows.iter().map(|&r| a.row(r).clone()).collect())?;
    let decoders = (0..n)
        .map(|i| {
            let (rem, coeffs) = reduce_against(a.row(i), &reduced, &combo, &pivot_col);
            debug_assert!(rem.is_zero(), "every row lies in the row space");
            let mut coefficients = BitVector::zeros(length);
            for (t, &c) in coeffs.iter().enumerate() {
                coefficients.set(t, c);
            }
            let side = a
                .row(i)
                .iter_ones()
                .filter(|&j| j != i)
                .map(|j| (j, true))
                .collect();
            Decoder { coefficients, side }
        })
        .collect();
    Ok(LinearIndexCode { n, length, encoder, decoders })
}

/// Eliminates `row` against the reduced basis; returns the remainder and the
/// combination of kept original rows that was subtracted.
fn reduce_against(
    row: &BitVector,
    reduced: &[BitVector],
    combo: &[Vec<bool>],
    pivot_col: &[usize],
) -> (BitVector, Vec<bool>) {
    let mut rem = row.clone();
    let mut coeffs = vec![false; reduced.len()];
    for t in 0..reduced.len() {
        if rem.get(pivot_col[t]) {
            rem.xor_assign(&reduced[t]);
            for (c, &b) in coeffs.iter_mut().zip(&combo[t]) {
                *c ^= b;
            }
        }
    }
    (rem, coeffs)
}

/// Broadcast word for input x.
pub fn encode(code: &LinearIndexCode, x: &BitVector) -> Result<BitVector> {
    if x.width() != code.n {
        return Err(Error::Input(format!(
            "input width {} does not match code over {} bits",
            x.width(),
            code.n
        )));
    }
    Ok(code.encoder.mul_vec(x))
}

/// Receiver i's decoded bit from the broadcast and its side information.
/// Only the positions named in receiver i's side pairs are read from
/// `side_bits`.
pub fn decode_receiver(
    code: &LinearIndexCode,
    i: usize,
    broadcast: &BitVector,
    side_bits: &BitVector,
) -> Result<bool> {
    if i >= code.n {
        return Err(Error::Input(format!("receiver {i} out of range")));
    }
    if broadcast.width() != code.length || side_bits.width() != code.n {
        return Err(Error::Input("broadcast or side-information width mismatch".into()));
    }
    let d = &code.decoders[i];
    let mut bit = d.coefficients.dot(broadcast);
    for &(j, coef) in &d.side {
        bit ^= coef && side_bits.get(j);
    }
    Ok(bit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

/// Verdict of a verification run; a failure carries the lowest failing word
/// and its receiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub words_checked: u64,
    pub counterexample: Option<(BitVector, usize)>,
}

/// Checks decodability of the code on g: every receiver recovers its bit on
/// every word (exhaustive, n <= 20) or on uniformly sampled words. Structural
/// mismatches (wrong sizes, side information outside the neighborhood) are
/// input errors, not verdicts.
pub fn verify_code(g: &Graph, code: &LinearIndexCode, mode: VerifyMode) -> Result<VerifyOutcome> {
    let n = g.n();
    if code.n != n {
        return Err(Error::Input(format!(
            "code is over {} bits, graph has {n} vertices",
            code.n
        )));
    }
    if code.length > n || code.encoder.rows() != code.length || code.encoder.cols() != n {
        return Err(Error::Input("encoder shape disagrees with declared length".into()));
    }
    if code.decoders.len() != n {
        return Err(Error::Input("one decoder per receiver required".into()));
    }
    for (i, d) in code.decoders.iter().enumerate() {
        if d.coefficients.width() != code.length {
            return Err(Error::Input(format!("receiver {i} coefficient width mismatch")));
        }
        for &(j, _) in &d.side {
            if !g.has_edge(i, j) {
                return Err(Error::Input(format!(
                    "receiver {i} uses side bit {j} outside its neighborhood"
                )));
            }
        }
    }
    match mode {
        VerifyMode::Exhaustive => {
            if n > EXHAUSTIVE_VERIFY_CAP {
                return Err(Error::Input(format!(
                    "exhaustive verification is capped at {EXHAUSTIVE_VERIFY_CAP} bits, got {n}"
                )));
            }
            let mut words = 0;
            for word in 0..(1u64 << n) {
                let x = BitVector::from_u64(n, word);
                words += 1;
                if let Some(i) = failing_receiver(code, &x)? {
                    return Ok(VerifyOutcome {
                        pass: false,
                        words_checked: words,
                        counterexample: Some((x, i)),
                    });
                }
            }
            Ok(VerifyOutcome { pass: true, words_checked: words, counterexample: None })
        }
        VerifyMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut words = 0;
            for _ in 0..trials {
                let mut x = BitVector::zeros(n);
                for b in 0..n {
                    x.set(b, rng.random::<bool>());
                }
                words += 1;
                if let Some(i) = failing_receiver(code, &x)? {
                    return Ok(VerifyOutcome {
                        pass: false,
                        words_checked: words,
                        counterexample: Some((x, i)),
                    });
                }
            }
            Ok(VerifyOutcome { pass: true, words_checked: words, counterexample: None })
        }
    }
}

/// Lowest receiver failing on word x, if any.
fn failing_receiver(code: &LinearIndexCode, x: &BitVector) -> Result<Option<usize>> {
    let broadcast = encode(code, x)?;
    for i in 0..code.n {
        if decode_receiver(code, i, &broadcast, x)? != x.get(i) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

impl LinearIndexCode {
    /// Text format: header "n l", then l encoder rows as bit strings, then
    /// one line per receiver "i : c_i | j:coef,...". Round trips bit-exactly
    /// through `parse_text`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.length);
        for r in 0..self.length {
            out.push_str(&self.encoder.row(r).to_bit_string());
            out.push('\n');
        }
        for (i, d) in self.decoders.iter().enumerate() {
            let side = d
                .side
                .iter()
                .map(|&(j, c)| format!("{j}:{}", c as u8))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!("{i} : {} | {side}\n", d.coefficients.to_bit_string()));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<LinearIndexCode> {
        let mut lines = text.lines().enumerate();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty code file".into() })?;
        let parse_err = |ln: usize, msg: String| Error::Parse { line: ln + 1, msg };
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(ln, "header must start with the bit count".into()))?;
        let length: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(ln, "header must give the code length".into()))?;
        if parts.next().is_some() {
            return Err(parse_err(ln, "header has trailing tokens".into()));
        }
        if length > n {
            return Err(parse_err(ln, format!("length {length} exceeds bit count {n}")));
        }
        let mut rows = Vec::with_capacity(length);
        for _ in 0..length {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| parse_err(0, "missing encoder row".into()))?;
            let bits = BitVector::from_bit_string(row.trim())
                .map_err(|e| parse_err(ln, e.to_string()))?;
            if bits.width() != n {
                return Err(parse_err(ln, format!("encoder row must have {n} bits")));
            }
            rows.push(bits);
        }
        let encoder = BitMatrix::from_rows(rows)?;
        let mut decoders = Vec::with_capacity(n);
        for expect in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("missing decoder line for receiver {expect}")))?;
            let (head, rest) = line
                .split_once(" : ")
                .ok_or_else(|| parse_err(ln, "decoder line must contain ' : '".into()))?;
            let i: usize = head
                .trim()
                .parse()
                .map_err(|_| parse_err(ln, "decoder line must start with the receiver id".into()))?;
            if i != expect {
                return Err(parse_err(ln, format!("expected receiver {expect}, found {i}")));
            }
            let (coef_text, side_text) = rest
                .split_once(" | ")
                .unwrap_or((rest.trim_end_matches(" |"), ""));
            let coefficients = BitVector::from_bit_string(coef_text.trim())
                .map_err(|e| parse_err(ln, e.to_string()))?;
            if coefficients.width() != length {
                return Err(parse_err(ln, format!("coefficients must have {length} bits")));
            }
            let mut side = Vec::new();
            for tok in side_text.split(',').filter(|t| !t.trim().is_empty()) {
                let (j, c) = tok
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, format!("bad side pair '{tok}'")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| parse_err(ln, format!("bad side vertex in '{tok}'")))?;
                if j >= n {
                    return Err(parse_err(ln, format!("side vertex {j} out of range")));
                }
                let c = match c {
                    "0" => false,
                    "1" => true,
                    _ => return Err(parse_err(ln, format!("bad coefficient in '{tok}'"))),
                };
                side.push((j, c));
            }
            decoders.push(Decoder { coefficients, side });
        }
        Ok(LinearIndexCode { n, length, encoder, decoders })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::greedy_coloring;
    use crate::gf2::{gf2_rank, minrank_oracle, MinrankOutcome};
    use crate::graph::gen_bounded_minrank_instance;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn exhaustive(g: &Graph, code: &LinearIndexCode) -> VerifyOutcome {
        verify_code(g, code, VerifyMode::Exhaustive).unwrap()
    }

    #[test]
    fn complete_graph_collapses_to_one_xor_bit() {
        let g = Graph::complete(5);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        assert_eq!(code.length, 1);
        assert!(exhaustive(&g, &code).pass);
    }

    #[test]
    fn edgeless_graph_needs_the_identity_code() {
        let g = Graph::new(4);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        assert_eq!(code.length, 4);
        assert!(exhaustive(&g, &code).pass);

        let a = BitMatrix::identity(4);
        let code = code_from_matrix(&a, &g).unwrap();
        assert_eq!(code.length, 4);
        assert!(exhaustive(&g, &code).pass);
        // Identity code: receiver i reads its own coordinate.
        let x = BitVector::from_u64(4, 0b1010);
        let b = encode(&code, &x).unwrap();
        for i in 0..4 {
            assert_eq!(decode_receiver(&code, i, &b, &x).unwrap(), x.get(i));
        }
    }

    #[test]
    fn pentagon_three_colors_three_bits() {
        let g = cycle(5);
        let coloring = greedy_coloring(&g.complement());
        assert_eq!(coloring.count, 3);
        let code = code_from_coloring(&g, &coloring).unwrap();
        assert_eq!(code.length, 3);
        let outcome = exhaustive(&g, &code);
        assert!(outcome.pass);
        assert_eq!(outcome.words_checked, 32);
    }

    #[test]
    fn coloring_must_fit_the_complement() {
        let g = cycle(5);
        let bad = Coloring { colors: vec![0; 5], count: 1 };
        assert!(code_from_coloring(&g, &bad).is_err());
    }

    #[test]
    fn all_ones_matrix_on_the_complete_graph() {
        let g = Graph::complete(6);
        let a = BitMatrix::all_ones(6, 6);
        let code = code_from_matrix(&a, &g).unwrap();
        assert_eq!(code.length, 1);
        assert!(exhaustive(&g, &code).pass);
    }

    #[test]
    fn oracle_representation_of_the_pentagon() {
        let g = cycle(5);
        let (outcome, rep) = minrank_oracle(&g, 5);
        assert_eq!(outcome, MinrankOutcome::Exact(3));
        let a = rep.unwrap().assemble();
        let code = code_from_matrix(&a, &g).unwrap();
        assert_eq!(code.length, gf2_rank(&a));
        assert_eq!(code.length, 3);
        assert!(exhaustive(&g, &code).pass);
    }

    #[test]
    fn non_representing_matrix_is_rejected() {
        let g = Graph::new(3);
        let a = BitMatrix::all_ones(3, 3);
        assert!(code_from_matrix(&a, &g).is_err());
    }

    #[test]
    fn hand_checked_xor_decode_on_the_triangle() {
        let g = Graph::complete(3);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        assert_eq!(code.length, 1);
        let x = BitVector::from_u64(3, 0b101);
        let b = encode(&code, &x).unwrap();
        assert!(!b.get(0));
        assert!(decode_receiver(&code, 0, &b, &x).unwrap());
        // Zero word broadcasts zero and decodes zero everywhere.
        let zero = BitVector::zeros(3);
        let bz = encode(&code, &zero).unwrap();
        assert!(bz.is_zero());
        for i in 0..3 {
            assert!(!decode_receiver(&code, i, &bz, &zero).unwrap());
        }
    }

    #[test]
    fn flipped_coefficient_is_caught_with_a_counterexample() {
        let g = cycle(5);
        let coloring = greedy_coloring(&g.complement());
        let mut code = code_from_coloring(&g, &coloring).unwrap();
        let have = code.decoders[2].coefficients.get(0);
        code.decoders[2].coefficients.set(0, !have);
        let outcome = exhaustive(&g, &code);
        assert!(!outcome.pass);
        let (word, receiver) = outcome.counterexample.unwrap();
        let broadcast = encode(&code, &word).unwrap();
        assert_ne!(
            decode_receiver(&code, receiver, &broadcast, &word).unwrap(),
            word.get(receiver)
        );
    }

    #[test]
    fn sampled_and_exhaustive_verdicts_agree() {
        let g = gen_bounded_minrank_instance(10, 3, 0.5, 4);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        let ex = exhaustive(&g, &code);
        let sm = verify_code(&g, &code, VerifyMode::Sampled { trials: 10_000, seed: 9 }).unwrap();
        assert_eq!(ex.pass, sm.pass);
        assert!(ex.pass);

        let mut broken = code.clone();
        let bit = broken.decoders[0].coefficients.get(0);
        broken.decoders[0].coefficients.set(0, !bit);
        let ex = exhaustive(&g, &broken);
        let sm =
            verify_code(&g, &broken, VerifyMode::Sampled { trials: 10_000, seed: 9 }).unwrap();
        assert_eq!(ex.pass, sm.pass);
        assert!(!ex.pass);
    }

    #[test]
    fn linearity_of_the_encoder() {
        use rand::{Rng, SeedableRng};
        let g = gen_bounded_minrank_instance(12, 3, 0.5, 1);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = BitVector::from_u64(12, rng.random::<u64>() & 0xfff);
            let y = BitVector::from_u64(12, rng.random::<u64>() & 0xfff);
            let mut xy = x.clone();
            xy.xor_assign(&y);
            let mut sum = encode(&code, &x).unwrap();
            sum.xor_assign(&encode(&code, &y).unwrap());
            assert_eq!(encode(&code, &xy).unwrap(), sum);
        }
    }

    #[test]
    fn matrix_code_length_equals_rank_and_beats_coloring() {
        // Complements of generated instances carry a certified minrank <= 3,
        // so the oracle terminates quickly and the chain
        // alpha <= rank <= coloring length can be checked end to end.
        for seed in 0..8 {
            let h = gen_bounded_minrank_instance(8, 3, 0.5, seed).complement();
            let (outcome, rep) = minrank_oracle(&h, 4);
            let MinrankOutcome::Exact(m) = outcome else {
                panic!("oracle must finish on 8 vertices")
            };
            assert!(m <= 3);
            let a = rep.unwrap().assemble();
            let code = code_from_matrix(&a, &h).unwrap();
            assert_eq!(code.length, gf2_rank(&a));
            assert_eq!(code.length, m);
            assert!(exhaustive(&h, &code).pass);

            let coloring = greedy_coloring(&h.complement());
            let col_code = code_from_coloring(&h, &coloring).unwrap();
            assert!(col_code.length >= m);
            assert!(exhaustive(&h, &col_code).pass);

            let alpha = brute_alpha(&h);
            assert!(m >= alpha);
        }
    }

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 20);
        let masks: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter_ones().fold(0u64, |m, u| m | (1 << u)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1 << n) {
            if set.count_ones() as usize <= best {
                continue;
            }
            let mut ok = true;
            for (v, &mask) in masks.iter().enumerate() {
                if set & (1 << v) != 0 && mask & set != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                best = set.count_ones() as usize;
            }
        }
        best
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let g = cycle(5);
        let coloring = greedy_coloring(&g.complement());
        let code = code_from_coloring(&g, &coloring).unwrap();
        let text = code.to_text();
        let back = LinearIndexCode::parse_text(&text).unwrap();
        assert_eq!(code, back);
        assert_eq!(text, back.to_text());

        let (_, rep) = minrank_oracle(&g.complement(), 5);
        let a = rep.unwrap().assemble();
        let code = code_from_matrix(&a, &g.complement()).unwrap();
        let back = LinearIndexCode::parse_text(&code.to_text()).unwrap();
        assert_eq!(code, back);

        assert!(LinearIndexCode::parse_text("").is_err());
        assert!(LinearIndexCode::parse_text("3 5\n").is_err());
        assert!(LinearIndexCode::parse_text("2 1\n10\n0 : 1 | \nbogus").is_err());
    }
}
