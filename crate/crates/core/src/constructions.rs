//! Named small hypergraphs.
//!
//! | name            | vertices | edges            | 2-colourable |
//! |-----------------|----------|------------------|--------------|
//! | `triangle`      | 3        | 3 × size 2       | no           |
//! | `fano`          | 7        | 7 × size 3       | no           |
//! | `seymour-toft`  | 11       | 23 × size 4      | no           |
//! | `h4`            | 16       | 20 × size 4      | yes (120 ways) |
//! | `h8`            | 16       | 60 × size 8      | yes          |
//! | `paper-example` | 16       | 20 × 4 + 60 × 8  | no           |

use std::fmt;
use std::ops::{Add, Mul};

use crate::colouring::{enumerate_proper, pair_opposites};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Element of GF(4) = {0, 1, ω, ω+1}, encoded as 0, 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_PLUS_ONE: Gf4 = Gf4(3);

    pub const ELEMENTS: [Gf4; 4] = [Gf4(0), Gf4(1), Gf4(2), Gf4(3)];

    pub fn new(code: u8) -> Option<Gf4> {
        (code < 4).then_some(Gf4(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }
}

// ω² = ω + 1
const MUL_TABLE: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl Add for Gf4 {
    type Output = Gf4;

    // Characteristic 2: addition is XOR of the coefficient bits.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;

    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(MUL_TABLE[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["0", "1", "w", "w+1"][self.0 as usize])
    }
}

pub fn gf4_add(a: Gf4, b: Gf4) -> Gf4 {
    a + b
}

pub fn gf4_mul(a: Gf4, b: Gf4) -> Gf4 {
    a * b
}

/// Graph triangle: the smallest non-2-colourable graph.
pub fn triangle() -> Hypergraph {
    Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).expect("static edges are valid")
}

pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// Fano plane: 7 points, 7 lines of size 3.
pub fn fano() -> Hypergraph {
    Hypergraph::new(7, FANO_LINES).expect("static edges are valid")
}

/// The 23 size-4 edges of the Seymour–Toft hypergraph, 1-based as usually printed.
pub const SEYMOUR_TOFT_EDGES: [[usize; 4]; 23] = [
    [1, 2, 9, 10],
    [3, 4, 9, 10],
    [5, 6, 9, 10],
    [7, 8, 9, 10],
    [1, 2, 9, 11],
    [3, 4, 9, 11],
    [5, 6, 9, 11],
    [7, 8, 9, 11],
    [1, 2, 10, 11],
    [3, 4, 10, 11],
    [5, 6, 10, 11],
    [7, 8, 10, 11],
    [1, 3, 5, 8],
    [1, 3, 6, 7],
    [1, 4, 5, 7],
    [1, 4, 6, 7],
    [1, 4, 6, 8],
    [2, 3, 5, 7],
    [2, 3, 6, 7],
    [2, 3, 6, 8],
    [2, 4, 5, 7],
    [2, 4, 5, 8],
    [2, 4, 6, 8],
];

/// Seymour–Toft 4-uniform hypergraph on 11 vertices; label `k` becomes vertex `k - 1`.
pub fn seymour_toft() -> Hypergraph {
    Hypergraph::new(
        11,
        SEYMOUR_TOFT_EDGES.iter().map(|e| e.iter().map(|&k| k - 1)),
    )
    .expect("static edges are valid")
}

/// Vertex index of the point `(x, y)` of GF(4)².
pub fn affine_point(x: Gf4, y: Gf4) -> usize {
    4 * x.code() as usize + y.code() as usize
}

/// Affine plane of order 4 over GF(4): 16 points `(x, y)` (vertex `4x + y`),
/// 16 lines `y = ax + b` and 4 vertical lines `x = c`.
pub fn affine_plane_gf4() -> Hypergraph {
    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(20);
    for a in Gf4::ELEMENTS {
        for b in Gf4::ELEMENTS {
            lines.push(
                Gf4::ELEMENTS
                    .iter()
                    .map(|&x| affine_point(x, a * x + b))
                    .collect(),
            );
        }
    }
    for c in Gf4::ELEMENTS {
        lines.push(Gf4::ELEMENTS.iter().map(|&y| affine_point(c, y)).collect());
    }
    Hypergraph::new(16, lines).expect("affine lines are valid edges")
}

/// Turns every opposite pair of proper colourings of `h4` into one edge: the
/// red class of the member that colours vertex 0 red. Every proper colouring
/// must be balanced.
pub fn derive_h8(h4: &Hypergraph) -> Result<Hypergraph> {
    let report = enumerate_proper(h4, true)?;
    let colourings = report.colourings.expect("materialized");
    let v = h4.vertex_count();
    if let Some(c) = colourings.iter().find(|c| 2 * c.red_count() != v) {
        return Err(Error::UnbalancedColouring {
            colouring: c.to_string(),
            red: c.red_count(),
            blue: c.blue_count(),
        });
    }
    let pairs = pair_opposites(&colourings)?;
    Hypergraph::new(
        v,
        pairs
            .iter()
            .map(|(c, _)| c.red_vertices().collect::<Vec<_>>()),
    )
}

/// H4 together with the 8-edges derived from its colourings.
pub fn paper_example() -> Hypergraph {
    let h4 = affine_plane_gf4();
    let h8 = derive_h8(&h4).expect("affine plane colourings are balanced");
    h4.union(&h8).expect("same vertex set")
}

/// Stable construction names, in CLI order.
pub const CONSTRUCTION_NAMES: [&str; 6] = [
    "triangle",
    "fano",
    "seymour-toft",
    "h4",
    "h8",
    "paper-example",
];

pub fn by_name(name: &str) -> Result<Hypergraph> {
    match name {
        "triangle" => Ok(triangle()),
        "fano" => Ok(fano()),
        "seymour-toft" => Ok(seymour_toft()),
        "h4" => Ok(affine_plane_gf4()),
        "h8" => derive_h8(&affine_plane_gf4()),
        "paper-example" => Ok(paper_example()),
        other => Err(Error::UnknownConstruction(other.to_string())),
    }
}
