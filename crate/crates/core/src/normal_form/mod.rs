//! Computation histories and the normal-form predicates.
//!
//! A history code packs a non-empty list of configuration codes with
//! [`encode_prefix`]. A configuration code is `τ³(state, head offset, window)`
//! where the window is `τ(length, numeral)` and the numeral reads the visited
//! cells in base 3 (blank 0, zero 1, one 2) with the leftmost cell most
//! significant.
//!
//! The predicates are total: a code that does not decode to a legal halting
//! history of the computation is simply not a witness.
//!
//! Bounded searches come in two flavours. [`mu_bounded`] and
//! [`lambda_bounded`] scan every `y < bound`, which is only feasible for small
//! bounds. The witness-based searches enumerate the codes that can satisfy a
//! predicate (a minimal history and its paddings) and give the same answer for
//! bounds far beyond any linear scan.

mod stage;

pub use stage::StageComputation;

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use crate::encodings::{decode_prefix, encode_prefix, tau, tau_inv, tau_k_inv};
use crate::machine::{Configuration, Machine, ProgramIndex, Symbol};
use crate::{Error, Nat, Result};

/// Code bound used by tests that quantify over every `z < y`.
pub const DEFAULT_CODE_CEILING: u64 = 10_000_000;

/// Longest tape window [`decode_config`] will materialize.
pub const MAX_DECODED_WINDOW: usize = 1 << 16;

/// Something that steps through configurations: a machine, or a stage function
/// viewed as a one-step computation.
pub trait Computation {
    fn initial(&self, input: &Nat) -> Configuration;
    fn successor(&self, cfg: &Configuration) -> Configuration;
}

impl Computation for Machine {
    fn initial(&self, input: &Nat) -> Configuration {
        Configuration::initial(Some(input))
    }

    fn successor(&self, cfg: &Configuration) -> Configuration {
        Machine::successor(self, cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedSearchResult {
    Found(Nat),
    NotFound,
}

impl BoundedSearchResult {
    pub fn found(&self) -> Option<&Nat> {
        match self {
            BoundedSearchResult::Found(y) => Some(y),
            BoundedSearchResult::NotFound => None,
        }
    }
}

impl From<Option<Nat>> for BoundedSearchResult {
    fn from(value: Option<Nat>) -> Self {
        value.map_or(BoundedSearchResult::NotFound, BoundedSearchResult::Found)
    }
}

pub fn window_code(cells: &[Symbol]) -> Nat {
    let digits: Vec<u8> = cells.iter().map(|s| s.digit()).collect();
    let numeral = Nat::from_radix_be(&digits, 3).unwrap_or_default();
    tau(&Nat::from(cells.len()), &numeral)
}

pub fn config_code(cfg: &Configuration) -> Nat {
    tau(
        &tau(&Nat::from(cfg.state), &Nat::from(cfg.head_offset())),
        &window_code(cfg.window()),
    )
}

/// Inverse of [`config_code`]. The window is placed at origin 0. Codes with a
/// state above 255, a head outside the window, a numeral too large for the
/// window length or a window longer than [`MAX_DECODED_WINDOW`] are rejected.
pub fn decode_config(code: &Nat) -> Option<Configuration> {
    let parts = tau_k_inv(code, 3).ok()?;
    let state = parts[0].to_u8()?;
    let head_offset = parts[1].to_usize()?;
    let (len, numeral) = tau_inv(&parts[2]);
    let len = len
        .to_usize()
        .filter(|&l| (1..=MAX_DECODED_WINDOW).contains(&l))?;
    if numeral >= Nat::from(3u8).pow(len as u32) {
        return None;
    }
    let mut digits = if numeral.is_zero() {
        Vec::new()
    } else {
        numeral.to_radix_be(3)
    };
    let mut cells = vec![Symbol::Blank; len - digits.len()];
    cells.extend(
        digits
            .drain(..)
            .map(|d| Symbol::from_digit(d).expect("base-3 digit")),
    );
    Configuration::from_window(state, head_offset, cells)
}

pub fn encode_history(cfgs: &[Configuration]) -> Result<Nat> {
    if cfgs.is_empty() {
        return Err(Error::EmptyList);
    }
    let codes: Vec<Nat> = cfgs.iter().map(config_code).collect();
    encode_prefix(&codes)
}

/// Inverse of [`encode_history`]; `None` if any configuration is undecodable.
pub fn decode_history(y: &Nat) -> Option<Vec<Configuration>> {
    decode_prefix(y).iter().map(decode_config).collect()
}

/// `y` with one more copy of its last configuration appended.
pub fn pad(y: &Nat) -> Nat {
    let mut codes = decode_prefix(y);
    let last = codes.last().expect("decode_prefix is non-empty").clone();
    codes.push(last);
    encode_prefix(&codes).expect("non-empty")
}

/// `U(y)`: output of the last configuration, `0` when undecodable.
pub fn output(y: &Nat) -> Nat {
    let codes = decode_prefix(y);
    codes
        .last()
        .and_then(decode_config)
        .map(|cfg| cfg.output())
        .unwrap_or_default()
}

/// `T`: whether `y` is a halting history of `comp` on `input`, possibly padded
/// with copies of the final configuration.
pub fn is_history<C: Computation + ?Sized>(comp: &C, input: &Nat, y: &Nat) -> bool {
    let codes = decode_prefix(y);
    let mut cfg = comp.initial(input);
    let mut expected = config_code(&cfg);
    for (k, code) in codes.iter().enumerate() {
        if k > 0 && !cfg.is_halted() {
            cfg = comp.successor(&cfg);
            expected = config_code(&cfg);
        }
        if *code != expected {
            return false;
        }
    }
    cfg.is_halted()
}

/// The unpadded halting history of `comp` on `input` if its code is below
/// `bound`.
///
/// Partial histories only grow as configurations are appended, so the
/// simulation stops as soon as the partial code reaches `bound`, or when the
/// computation reaches a non-halted fixed point.
pub fn least_history_below<C: Computation + ?Sized>(
    comp: &C,
    input: &Nat,
    bound: &Nat,
) -> Option<Nat> {
    let mut cfg = comp.initial(input);
    let mut codes = vec![config_code(&cfg)];
    loop {
        let code = encode_prefix(&codes).expect("non-empty");
        if code >= *bound {
            return None;
        }
        if cfg.is_halted() {
            return Some(code);
        }
        let next = comp.successor(&cfg);
        if next == cfg {
            return None;
        }
        codes.push(config_code(&next));
        cfg = next;
    }
}

/// Every `y < bound` with `is_history(comp, input, y)`, ascending: the least
/// history followed by its paddings.
pub fn history_witnesses<C: Computation + ?Sized>(comp: &C, input: &Nat, bound: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    let mut next = least_history_below(comp, input, bound);
    while let Some(y) = next {
        next = Some(pad(&y)).filter(|p| p < bound);
        out.push(y);
    }
    out
}

/// `T″`: `y` is the least halting history of `comp` on `input`.
pub fn is_least_history<C: Computation + ?Sized>(comp: &C, input: &Nat, y: &Nat) -> bool {
    is_history(comp, input, y) && least_history_below(comp, input, y).is_none()
}

/// `T′` at `xn = τ(x, n)`: `y` is a halting history at stage `n` whose output
/// differs from that of every halting history `z < y` at an earlier stage.
///
/// The quantifier ranges jointly over all `m < n` and all codes `z < y`; the
/// histories below `y` at stage `m` are the least one and its paddings, which
/// all share one output.
pub fn is_mind_change<C: Computation + ?Sized>(comp: &C, xn: &Nat, y: &Nat) -> bool {
    if !is_history(comp, xn, y) {
        return false;
    }
    let value = output(y);
    let (x, n) = tau_inv(xn);
    let mut m = Nat::zero();
    while m < n {
        if let Some(h) = least_history_below(comp, &tau(&x, &m), y) {
            if output(&h) == value {
                return false;
            }
        }
        m += 1u8;
    }
    true
}

/// Least `y < bound` with `pred(y)`, scanning upward.
pub fn mu_bounded(bound: &Nat, mut pred: impl FnMut(&Nat) -> bool) -> BoundedSearchResult {
    let mut y = Nat::zero();
    while y < *bound {
        if pred(&y) {
            return BoundedSearchResult::Found(y);
        }
        y += 1u8;
    }
    BoundedSearchResult::NotFound
}

/// Greatest `y < bound` with `pred(y)`, scanning downward.
pub fn lambda_bounded(bound: &Nat, mut pred: impl FnMut(&Nat) -> bool) -> BoundedSearchResult {
    let mut y = bound.clone();
    while !y.is_zero() {
        y -= 1u8;
        if pred(&y) {
            return BoundedSearchResult::Found(y);
        }
    }
    BoundedSearchResult::NotFound
}

/// Least candidate below `bound` satisfying `pred`. Equals [`mu_bounded`]
/// whenever `candidates` contains every `y < bound` satisfying `pred`.
pub fn mu_among(
    candidates: impl IntoIterator<Item = Nat>,
    bound: &Nat,
    mut pred: impl FnMut(&Nat) -> bool,
) -> BoundedSearchResult {
    candidates
        .into_iter()
        .filter(|y| y < bound && pred(y))
        .min()
        .into()
}

/// Greatest candidate below `bound` satisfying `pred`; see [`mu_among`].
pub fn lambda_among(
    candidates: impl IntoIterator<Item = Nat>,
    bound: &Nat,
    mut pred: impl FnMut(&Nat) -> bool,
) -> BoundedSearchResult {
    candidates
        .into_iter()
        .filter(|y| y < bound && pred(y))
        .max()
        .into()
}

/// Every pair `(n, y)` with `y < bound` and `is_history(comp, τ(x, n), y)`.
///
/// Any history at stage `n` is at least `τ(0, c)` for the code `c` of the
/// initial configuration on `τ(x, n)`, which grows with `n` for binary input
/// tapes, so the stages are enumerated until that floor reaches `bound`.
pub fn stage_witnesses<C: Computation + ?Sized>(comp: &C, x: &Nat, bound: &Nat) -> Vec<(Nat, Nat)> {
    let mut out = Vec::new();
    let mut n = Nat::zero();
    loop {
        let xn = tau(x, &n);
        let floor = tau(&Nat::zero(), &config_code(&comp.initial(&xn)));
        if floor.cmp(bound) != Ordering::Less {
            return out;
        }
        out.extend(
            history_witnesses(comp, &xn, bound)
                .into_iter()
                .map(|y| (n.clone(), y)),
        );
        n += 1u8;
    }
}

/// `λy < bound. ∃n T′(τ(x, n), y)`, evaluated over the stage witnesses.
pub fn lambda_mind_change<C: Computation + ?Sized>(
    comp: &C,
    x: &Nat,
    bound: &Nat,
) -> BoundedSearchResult {
    stage_witnesses(comp, x, bound)
        .into_iter()
        .filter(|(n, y)| is_mind_change(comp, &tau(x, n), y))
        .map(|(_, y)| y)
        .max()
        .into()
}

/// `μy < bound. T(e, x, y)` for a machine, over its history witnesses.
pub fn mu_history<C: Computation + ?Sized>(
    comp: &C,
    input: &Nat,
    bound: &Nat,
) -> BoundedSearchResult {
    mu_among(history_witnesses(comp, input, bound), bound, |y| {
        is_history(comp, input, y)
    })
}

/// `T(e, x, y)` for the machine with index `e`.
pub fn t(e: &ProgramIndex, x: &Nat, y: &Nat) -> bool {
    is_history(&Machine::decode(e), x, y)
}

/// `T′(p, xn, y)` for the machine with index `p`.
pub fn t_prime(p: &ProgramIndex, xn: &Nat, y: &Nat) -> bool {
    is_mind_change(&Machine::decode(p), xn, y)
}

/// `T″(e, x, y)` for the machine with index `e`.
pub fn t_dprime(e: &ProgramIndex, x: &Nat, y: &Nat) -> bool {
    is_least_history(&Machine::decode(e), x, y)
}

/// `U(y)`.
pub fn u(y: &Nat) -> Nat {
    output(y)
}
