//! Text formats for boxes, games and decompositions.
//!
//! Every format is line-based: blank lines and `#` comments are ignored,
//! fields are separated by whitespace, and probabilities are written as
//! reduced fractions `p/q`.

use std::fmt::Write as _;

use nlbox_core::boxes::{self, CorrBox, NamedBox};
use nlbox_core::games::Game;
use nlbox_core::multigen::{tri_index, tri_unindex, GenBox, TriBox};
use nlbox_core::polytope::LocalDecomposition;
use nlbox_core::rat::{parse_rat, Frac, Rat};
use num_traits::Zero;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing entry for {0}")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown box mnemonic `{0}`")]
    UnknownBox(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let fields: Vec<&str> = l.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn bit(line: usize, s: &str) -> Result<u8, FormatError> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(syntax(line, format!("expected a bit, found `{s}`"))),
    }
}

fn index(line: usize, s: &str, bound: usize) -> Result<usize, FormatError> {
    s.parse::<usize>()
        .ok()
        .filter(|&v| v < bound)
        .ok_or_else(|| syntax(line, format!("expected an index below {bound}, found `{s}`")))
}

fn prob(line: usize, s: &str) -> Result<Rat, FormatError> {
    parse_rat(s).map_err(|e| syntax(line, e.to_string()))
}

/// Reads the `2^width` entries keyed by bit tuples, each given
/// exactly once.
fn read_bit_table(text: &str, width: usize, slot: impl Fn(&[u8]) -> usize) -> Result<Vec<Rat>, FormatError> {
    let count = 1usize << width;
    let mut table: Vec<Option<Rat>> = vec![None; count];
    for (line, f) in records(text) {
        if f.len() != width + 1 {
            return Err(syntax(line, format!("expected {} fields, found {}", width + 1, f.len())));
        }
        let bits = f[..width].iter().map(|s| bit(line, s)).collect::<Result<Vec<u8>, _>>()?;
        let i = slot(&bits);
        if table[i].is_some() {
            return Err(syntax(line, "duplicate entry"));
        }
        table[i] = Some(prob(line, f[width])?);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| FormatError::Missing(format!("entry {i}"))))
        .collect()
}

/// Sixteen `a b x y p/q` lines in any order.
pub fn parse_box(text: &str) -> Result<CorrBox, FormatError> {
    let t = read_bit_table(text, 4, |b| boxes::index(b[0], b[1], b[2], b[3]))?;
    let table: [Rat; 16] = t.try_into().expect("sixteen entries");
    CorrBox::new(table).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Sorted by `(x, y, a, b)`.
pub fn write_box(b: &CorrBox) -> String {
    let mut s = String::new();
    for x in 0..2u8 {
        for y in 0..2u8 {
            for a in 0..2u8 {
                for bb in 0..2u8 {
                    writeln!(s, "{a} {bb} {x} {y} {}", Frac(b.p(a, bb, x, y))).unwrap();
                }
            }
        }
    }
    s
}

/// Sixty-four `a b c x y z p/q` lines in any order.
pub fn parse_tribox(text: &str) -> Result<TriBox, FormatError> {
    let t = read_bit_table(text, 6, |b| tri_index(b[0], b[1], b[2], b[3], b[4], b[5]))?;
    TriBox::new(t).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Sorted by `(x, y, z, a, b, c)`.
pub fn write_tribox(t: &TriBox) -> String {
    let mut s = String::new();
    for (i, p) in t.table().iter().enumerate() {
        let [a, b, c, x, y, z] = tri_unindex(i);
        writeln!(s, "{a} {b} {c} {x} {y} {z} {}", Frac(p)).unwrap();
    }
    s
}

/// Header `dx dy da db`, then `a b x y p/q` lines; absent entries are 0.
pub fn parse_genbox(text: &str) -> Result<GenBox, FormatError> {
    let mut rec = records(text);
    let (hl, header) = rec.next().ok_or_else(|| FormatError::Missing("header".into()))?;
    if header.len() != 4 {
        return Err(syntax(hl, "header must be `dx dy da db`"));
    }
    let dims: Vec<usize> = header
        .iter()
        .map(|s| s.parse::<usize>().ok().filter(|&d| d > 0 && d <= 64))
        .collect::<Option<_>>()
        .ok_or_else(|| syntax(hl, "alphabet sizes must be integers in 1..=64"))?;
    let dims: [usize; 4] = dims.try_into().expect("four sizes");
    let [dx, dy, da, db] = dims;
    let mut table: Vec<Option<Rat>> = vec![None; dx * dy * da * db];
    for (line, f) in rec {
        if f.len() != 5 {
            return Err(syntax(line, "expected `a b x y p/q`"));
        }
        let (a, b) = (index(line, f[0], da)?, index(line, f[1], db)?);
        let (x, y) = (index(line, f[2], dx)?, index(line, f[3], dy)?);
        let slot = &mut table[((x * dy + y) * da + a) * db + b];
        if slot.is_some() {
            return Err(syntax(line, "duplicate entry"));
        }
        *slot = Some(prob(line, f[4])?);
    }
    let table = table.into_iter().map(|v| v.unwrap_or_else(Rat::zero)).collect();
    GenBox::new(dims, table).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Header then the non-zero entries sorted by `(x, y, a, b)`.
pub fn write_genbox(g: &GenBox) -> String {
    let [dx, dy, da, db] = g.dims();
    let mut s = format!("{dx} {dy} {da} {db}\n");
    for x in 0..dx {
        for y in 0..dy {
            for a in 0..da {
                for b in 0..db {
                    let p = g.p(a, b, x, y);
                    if !p.is_zero() {
                        writeln!(s, "{a} {b} {x} {y} {}", Frac(p)).unwrap();
                    }
                }
            }
        }
    }
    s
}

/// Header `X Y A B`, prior lines `x y p/q`, predicate lines `a b x y v`.
/// Pairs without a prior line have weight 0; predicates default to losing.
pub fn parse_game(text: &str) -> Result<Game, FormatError> {
    let mut rec = records(text);
    let (hl, header) = rec.next().ok_or_else(|| FormatError::Missing("header".into()))?;
    if header.len() != 4 {
        return Err(syntax(hl, "header must be `X Y A B`"));
    }
    let sizes: Vec<usize> = header
        .iter()
        .map(|s| s.parse::<usize>().ok().filter(|&d| d > 0 && d <= 1 << 10))
        .collect::<Option<_>>()
        .ok_or_else(|| syntax(hl, "alphabet sizes must be positive integers"))?;
    let (nx, ny, na, nb) = (sizes[0], sizes[1], sizes[2], sizes[3]);
    let mut prior: Vec<Option<Rat>> = vec![None; nx * ny];
    let mut wins = vec![None; nx * ny * na * nb];
    for (line, f) in rec {
        match f.len() {
            3 => {
                let (x, y) = (index(line, f[0], nx)?, index(line, f[1], ny)?);
                let slot = &mut prior[x * ny + y];
                if slot.is_some() {
                    return Err(syntax(line, "duplicate prior entry"));
                }
                *slot = Some(prob(line, f[2])?);
            }
            5 => {
                let (a, b) = (index(line, f[0], na)?, index(line, f[1], nb)?);
                let (x, y) = (index(line, f[2], nx)?, index(line, f[3], ny)?);
                let slot = &mut wins[((a * nb + b) * nx + x) * ny + y];
                if slot.is_some() {
                    return Err(syntax(line, "duplicate predicate entry"));
                }
                *slot = Some(bit(line, f[4])? == 1);
            }
            _ => return Err(syntax(line, "expected `x y p/q` or `a b x y v`")),
        }
    }
    let prior = prior.into_iter().map(|p| p.unwrap_or_else(Rat::zero)).collect();
    let wins = wins.into_iter().map(|w| w.unwrap_or(false)).collect();
    Game::new((nx, ny), (na, nb), prior, wins).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_game(g: &Game) -> String {
    let ((nx, ny), (na, nb)) = (g.inputs(), g.outputs());
    let mut s = format!("{nx} {ny} {na} {nb}\n");
    for x in 0..nx {
        for y in 0..ny {
            writeln!(s, "{x} {y} {}", Frac(g.prior(x, y))).unwrap();
        }
    }
    for a in 0..na {
        for b in 0..nb {
            for x in 0..nx {
                for y in 0..ny {
                    writeln!(s, "{a} {b} {x} {y} {}", u8::from(g.wins(a, b, x, y))).unwrap();
                }
            }
        }
    }
    s
}

/// Sixteen `αβγδ p/q` lines, one per deterministic vertex.
pub fn write_decomposition(d: &LocalDecomposition) -> String {
    let mut s = String::new();
    for (i, w) in d.weights.iter().enumerate() {
        writeln!(s, "{}{}{}{} {}", i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1, Frac(w)).unwrap();
    }
    s
}

/// `pr`, `antipr`, `c`, `uniform`, `iso:p/q`, `corr:p/q`, `vertex:abgd`, `nl:abg`.
pub fn parse_named_box(s: &str) -> Result<NamedBox, FormatError> {
    let unknown = || FormatError::UnknownBox(s.into());
    let label = |v: &str, n: usize| -> Result<Vec<u8>, FormatError> {
        let bits: Vec<u8> = v
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<_>>()
            .ok_or_else(unknown)?;
        if bits.len() == n {
            Ok(bits)
        } else {
            Err(unknown())
        }
    };
    let param = |v: &str| parse_rat(v).map_err(|e| FormatError::Invalid(e.to_string()));
    Ok(match s.split_once(':') {
        None => match s {
            "pr" => NamedBox::Pr,
            "antipr" => NamedBox::AntiPr,
            "c" => NamedBox::Correlated,
            "uniform" => NamedBox::Uniform,
            _ => return Err(unknown()),
        },
        Some(("iso", v)) => NamedBox::Isotropic(param(v)?),
        Some(("corr", v)) => NamedBox::CorrelatedNonlocal(param(v)?),
        Some(("vertex", v)) => {
            let b = label(v, 4)?;
            NamedBox::LocalVertex([b[0], b[1], b[2], b[3]])
        }
        Some(("nl", v)) => {
            let b = label(v, 3)?;
            NamedBox::NonlocalVertex([b[0], b[1], b[2]])
        }
        _ => return Err(unknown()),
    })
}
