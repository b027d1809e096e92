//! Puzzle piece catalogs for every theory, and the label-tree grammar of the
//! multi-step rules.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Orientation of a unit triangle. Up-triangle sides are (left, right, bottom);
/// down-triangle sides are (top, right, left). Both orders are clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orient {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rotation {
    Free,
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Unit triangle allowed in every rotation, up or down.
    Triangle,
    SingleUp,
    SingleDown,
    /// U(r,c) on top of D(r+1,c).
    VerticalRhombus,
    /// U(r,c) followed by D(r,c).
    HorizontalComposite,
    /// Down triangle with one gashed side and a dangling gashed edge below it.
    HorizontalGashed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoeffTag {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "-1")]
    MinusOne,
    /// Equivariant weight, resolved from the position of the piece.
    #[serde(rename = "EQVAR")]
    EqVar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// The up triangle to the left is the top half of an equivariant rhombus.
    AfterEquivariant,
    /// Reading the top edges to the right in the same row (then the NE boundary),
    /// a possibly empty run of 0s is followed by a 1.
    ZerosThenOne,
}

/// The extra gashed edge hanging below the bottom vertex of a gashed down triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dangle {
    /// Edge between D(r+1,c) and U(r+1,c+1); D side 0, U side 1.
    SouthWest,
    /// Edge between U(r+1,c+1) and D(r+1,c+1); U side 0, D side 1.
    SouthEast,
}

/// One unit-triangle part of a piece, in a fixed position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub orient: Orient,
    /// Own labels in clockwise side order.
    pub labels: [String; 3],
    /// A side whose neighbour sees a different label: (side, outer label).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gash: Option<(usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dangle: Option<Dangle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub name: String,
    pub shape: Shape,
    pub rotation: Rotation,
    pub coeff: CoeffTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate: Option<Predicate>,
    pub parts: Vec<Part>,
}

/// A placeable unit-triangle part with orientation fixed, as used by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedPart {
    pub piece: usize,
    pub part: usize,
    pub orient: Orient,
    pub labels: [String; 3],
    pub coeff: CoeffTag,
    pub gash: Option<(usize, String)>,
    pub dangle: Option<Dangle>,
    pub predicate: Option<Predicate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    Int,
    Poly,
    Laurent,
}

/// The puzzle theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    /// Grassmannian cohomology.
    H,
    /// K-theory, single fixed K piece.
    K,
    /// K-theory, the three-piece convention with the 10K label.
    KAlt,
    /// Equivariant cohomology.
    HT,
    /// Equivariant K-theory.
    KT,
    /// Two-step flag cohomology.
    H2,
    /// Three-step flag cohomology.
    H3,
    /// Equivariant two-step flag cohomology.
    HT2,
}

impl Theory {
    pub const ALL: [Theory; 8] = [Theory::H, Theory::K, Theory::KAlt, Theory::HT, Theory::KT, Theory::H2, Theory::H3, Theory::HT2];

    pub fn tag(self) -> &'static str {
        match self {
            Theory::H => "h",
            Theory::K => "k",
            Theory::KAlt => "kalt",
            Theory::HT => "ht",
            Theory::KT => "kt",
            Theory::H2 => "h2",
            Theory::H3 => "h3",
            Theory::HT2 => "ht2",
        }
    }
    /// Number of steps of the flag variety the theory applies to.
    pub fn steps(self) -> usize {
        match self {
            Theory::H2 | Theory::HT2 => 2,
            Theory::H3 => 3,
            _ => 1,
        }
    }
    pub fn ring(self) -> RingKind {
        match self {
            Theory::HT | Theory::HT2 => RingKind::Poly,
            Theory::KT => RingKind::Laurent,
            _ => RingKind::Int,
        }
    }
    pub fn pieces(self) -> PieceSet {
        match self {
            Theory::H => pieces_cohomology_1step(),
            Theory::K => pieces_ktheory(KVariant::Original),
            Theory::KAlt => pieces_ktheory(KVariant::Alternate),
            Theory::HT => pieces_equivariant_1step(),
            Theory::KT => pieces_equivariant_k_1step(),
            Theory::H2 => pieces_twostep(),
            Theory::H3 => pieces_threestep(),
            Theory::HT2 => pieces_equivariant_twostep(),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theory::ALL
            .iter()
            .copied()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::usage(format!("unknown theory '{s}' (expected h, k, kalt, ht, kt, h2, h3, ht2)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KVariant {
    Original,
    Alternate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceSet {
    pub theory: Theory,
    pub ring: RingKind,
    /// Every edge label, boundary labels first.
    pub alphabet: Vec<String>,
    pub boundary: Vec<String>,
    pub pieces: Vec<Piece>,
    #[serde(skip)]
    pub oriented: Vec<OrientedPart>,
}

/// Label shown for an edge; composites use "label#tag" to make their internal
/// edge unique, and the tag is hidden when drawing or reading.
pub fn display_label(label: &str) -> &str {
    label.split('#').next().unwrap_or(label)
}

fn s3(a: &str, b: &str, c: &str) -> [String; 3] {
    [a.to_string(), b.to_string(), c.to_string()]
}

fn triangle(a: &str, b: &str, c: &str) -> Piece {
    Piece {
        name: format!("{a}/{b}/{c}"),
        shape: Shape::Triangle,
        rotation: Rotation::Free,
        coeff: CoeffTag::One,
        predicate: None,
        parts: vec![Part { orient: Orient::Up, labels: s3(a, b, c), gash: None, dangle: None }],
    }
}

fn part(orient: Orient, labels: [String; 3]) -> Part {
    Part { orient, labels, gash: None, dangle: None }
}

/// Vertical rhombus with top-left a, top-right b, bottom-left b, bottom-right a.
fn equivariant_rhombus(a: &str, b: &str, internal: &str) -> Piece {
    Piece {
        name: format!("eq({a},{b})"),
        shape: Shape::VerticalRhombus,
        rotation: Rotation::Fixed,
        coeff: CoeffTag::EqVar,
        predicate: None,
        parts: vec![part(Orient::Up, s3(a, b, internal)), part(Orient::Down, s3(internal, a, b))],
    }
}

impl PieceSet {
    fn build(theory: Theory, boundary: &[&str], pieces: Vec<Piece>) -> PieceSet {
        let boundary: Vec<String> = boundary.iter().map(|s| s.to_string()).collect();
        let mut alphabet = boundary.clone();
        for p in &pieces {
            for pt in &p.parts {
                let gash = pt.gash.iter().map(|(_, l)| l);
                for l in pt.labels.iter().chain(gash) {
                    if !alphabet.contains(l) {
                        alphabet.push(l.clone());
                    }
                }
            }
        }
        let mut oriented = Vec::new();
        for (pi, p) in pieces.iter().enumerate() {
            match p.rotation {
                Rotation::Free => {
                    let l = &p.parts[0].labels;
                    for orient in [Orient::Up, Orient::Down] {
                        let mut seen: Vec<[String; 3]> = Vec::new();
                        for rot in 0..3 {
                            let labels = [l[rot].clone(), l[(rot + 1) % 3].clone(), l[(rot + 2) % 3].clone()];
                            if seen.contains(&labels) {
                                continue;
                            }
                            seen.push(labels.clone());
                            oriented.push(OrientedPart {
                                piece: pi,
                                part: 0,
                                orient,
                                labels,
                                coeff: p.coeff,
                                gash: None,
                                dangle: None,
                                predicate: p.predicate,
                            });
                        }
                    }
                }
                Rotation::Fixed => {
                    for (qi, q) in p.parts.iter().enumerate() {
                        oriented.push(OrientedPart {
                            piece: pi,
                            part: qi,
                            orient: q.orient,
                            labels: q.labels.clone(),
                            coeff: if qi == 0 { p.coeff } else { CoeffTag::One },
                            gash: q.gash.clone(),
                            dangle: q.dangle,
                            predicate: if qi == 0 { p.predicate } else { None },
                        });
                    }
                }
            }
        }
        PieceSet { theory, ring: theory.ring(), alphabet, boundary, pieces, oriented }
    }

    /// Index of a label in the alphabet.
    pub fn label_id(&self, label: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == label)
    }

    pub fn is_boundary(&self, label: &str) -> bool {
        self.boundary.iter().any(|l| l == label)
    }

    /// Catalog in the JSON form used by fixtures and the renderer.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("piece sets serialize")
    }

    /// Distinct placements of the pieces, counting a uniform x/x/x triangle once.
    pub fn distinct_placements(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| match p.rotation {
                Rotation::Fixed => 1,
                Rotation::Free => {
                    let l = &p.parts[0].labels;
                    if l[0] == l[1] && l[1] == l[2] {
                        1
                    } else {
                        6
                    }
                }
            })
            .sum()
    }
}

fn uniform(digits: u8) -> Vec<Piece> {
    (0..=digits).map(|d| d.to_string()).map(|d| triangle(&d, &d, &d)).collect()
}

fn composite_triangles(labels: &[String]) -> Vec<Piece> {
    let mut out = Vec::new();
    for ab in labels {
        let Ok(LabelTree::Node(a, b)) = ab.parse::<LabelTree>() else { continue };
        let (a, b) = (a.to_string(), b.to_string());
        if labels.contains(&a) && labels.contains(&b) {
            out.push(triangle(&a, &b, ab));
        }
    }
    out
}

/// Triangles 0/0/0, 1/1/1 and 1/0/10 (clockwise), freely rotatable.
pub fn pieces_cohomology_1step() -> PieceSet {
    PieceSet::build(Theory::H, &["0", "1"], cohomology_pieces())
}

fn cohomology_pieces() -> Vec<Piece> {
    let mut p = uniform(1);
    p.push(triangle("1", "0", "10"));
    p
}

pub fn pieces_ktheory(variant: KVariant) -> PieceSet {
    let mut pieces = cohomology_pieces();
    match variant {
        KVariant::Original => {
            // The up triangle 10/10/10; its three neighbours are forced to the
            // cohomology triangles that complete the fixed K piece.
            pieces.push(Piece {
                name: "K".into(),
                shape: Shape::SingleUp,
                rotation: Rotation::Fixed,
                coeff: CoeffTag::MinusOne,
                predicate: None,
                parts: vec![part(Orient::Up, s3("10", "10", "10"))],
            });
            PieceSet::build(Theory::K, &["0", "1"], pieces)
        }
        KVariant::Alternate => {
            let horiz = |name: &str, coeff, up: [String; 3], down: [String; 3]| Piece {
                name: name.into(),
                shape: Shape::HorizontalComposite,
                rotation: Rotation::Fixed,
                coeff,
                predicate: None,
                parts: vec![part(Orient::Up, up), part(Orient::Down, down)],
            };
            pieces.push(horiz("K1", CoeffTag::MinusOne, s3("1", "1#K1", "1"), s3("0", "10K", "1#K1")));
            pieces.push(horiz("K2", CoeffTag::One, s3("10K", "1#K2", "0"), s3("0", "10K", "1#K2")));
            pieces.push(horiz("K3", CoeffTag::One, s3("10K", "10#K3", "10"), s3("1", "0", "10#K3")));
            PieceSet::build(Theory::KAlt, &["0", "1"], pieces)
        }
    }
}

pub fn pieces_equivariant_1step() -> PieceSet {
    let mut pieces = cohomology_pieces();
    pieces.push(equivariant_rhombus("0", "1", "01"));
    PieceSet::build(Theory::HT, &["0", "1"], pieces)
}

pub fn pieces_equivariant_k_1step() -> PieceSet {
    let mut pieces = cohomology_pieces();
    pieces.push(equivariant_rhombus("0", "1", "01"));
    pieces.push(Piece {
        name: "KT1".into(),
        shape: Shape::HorizontalGashed,
        rotation: Rotation::Fixed,
        coeff: CoeffTag::MinusOne,
        predicate: Some(Predicate::AfterEquivariant),
        parts: vec![Part { orient: Orient::Down, labels: s3("1", "1", "1"), gash: Some((1, "0".into())), dangle: Some(Dangle::SouthWest) }],
    });
    pieces.push(Piece {
        name: "KT2".into(),
        shape: Shape::HorizontalGashed,
        rotation: Rotation::Fixed,
        coeff: CoeffTag::MinusOne,
        predicate: Some(Predicate::ZerosThenOne),
        parts: vec![Part { orient: Orient::Down, labels: s3("0", "0", "0"), gash: Some((2, "1".into())), dangle: Some(Dangle::SouthEast) }],
    });
    PieceSet::build(Theory::KT, &["0", "1"], pieces)
}

pub fn pieces_twostep() -> PieceSet {
    PieceSet::build(Theory::H2, &["0", "1", "2"], twostep_pieces())
}

fn twostep_pieces() -> Vec<Piece> {
    let mut pieces = uniform(2);
    pieces.extend(composite_triangles(&valid_labels(2).expect("r=2 supported")));
    pieces
}

pub fn pieces_threestep() -> PieceSet {
    let labels = valid_labels(3).expect("r=3 supported");
    let mut pieces = uniform(3);
    pieces.extend(composite_triangles(&labels[..23]));
    for (a, b) in THREE_STEP_EXTRA {
        let ab = LabelTree::node(a.parse().expect("figure label"), b.parse().expect("figure label")).to_string();
        pieces.push(triangle(a, b, &ab));
    }
    PieceSet::build(Theory::H3, &["0", "1", "2", "3"], pieces)
}

/// The (a, b) sides of the four extra three-step pieces; the third side is ab.
pub const THREE_STEP_EXTRA: [(&str, &str); 4] = [("3(2(10))", "0"), ("3(21)", "10"), ("32", "(21)0"), ("3", "((32)1)0")];

/// The (a, b) pairs of the six equivariant two-step rhombi.
pub const TWO_STEP_EQUIVARIANT: [(&str, &str); 6] = [("0", "1"), ("0", "2"), ("1", "2"), ("10", "2"), ("0", "21"), ("10", "21")];

pub fn pieces_equivariant_twostep() -> PieceSet {
    let mut pieces = twostep_pieces();
    for (a, b) in TWO_STEP_EQUIVARIANT {
        let internal = format!("{}{}", wrap(a), wrap(b));
        pieces.push(equivariant_rhombus(a, b, &internal));
    }
    PieceSet::build(Theory::HT2, &["0", "1", "2"], pieces)
}

fn wrap(s: &str) -> String {
    if s.len() == 1 {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Binary tree with digit leaves, serialized with parentheses around every
/// non-leaf proper subtree, e.g. "2(10)" and "(21)0".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LabelTree {
    Leaf(u8),
    Node(Box<LabelTree>, Box<LabelTree>),
}

impl LabelTree {
    pub fn node(a: LabelTree, b: LabelTree) -> LabelTree {
        LabelTree::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<u8> {
        match self {
            LabelTree::Leaf(d) => vec![*d],
            LabelTree::Node(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn max_leaf(&self) -> u8 {
        self.leaves().into_iter().max().expect("trees have leaves")
    }

    /// Leaves strictly decrease, except that equal neighbours are allowed when
    /// exactly three parentheses separate them in the serialization.
    pub fn is_valid(&self) -> bool {
        let s = self.to_string();
        let chars: Vec<char> = s.chars().collect();
        let digit_pos: Vec<usize> = (0..chars.len()).filter(|&i| chars[i].is_ascii_digit()).collect();
        digit_pos.windows(2).all(|w| {
            let (a, b) = (chars[w[0]], chars[w[1]]);
            a > b || (a == b && w[1] - w[0] - 1 == 3)
        })
    }

    /// Every tree over the given strictly decreasing digits, in bracketing order.
    fn bracketings(digits: &[u8]) -> Vec<LabelTree> {
        if digits.len() == 1 {
            return vec![LabelTree::Leaf(digits[0])];
        }
        let mut out = Vec::new();
        for split in (1..digits.len()).rev() {
            for a in Self::bracketings(&digits[..split]) {
                for b in Self::bracketings(&digits[split..]) {
                    out.push(LabelTree::node(a.clone(), b));
                }
            }
        }
        out
    }
}

impl fmt::Display for LabelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelTree::Leaf(d) => write!(f, "{d}"),
            LabelTree::Node(a, b) => {
                for t in [a, b] {
                    match t.as_ref() {
                        LabelTree::Leaf(d) => write!(f, "{d}")?,
                        inner => write!(f, "({inner})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for LabelTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let bad = || Error::invalid(format!("malformed label tree '{s}'"));
        // Split into top-level items: single digits or balanced groups.
        let mut items: Vec<(bool, String)> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                c if c.is_ascii_digit() => {
                    items.push((false, c.to_string()));
                    i += 1;
                }
                '(' => {
                    let mut depth = 0;
                    let start = i;
                    loop {
                        match chars.get(i) {
                            Some('(') => depth += 1,
                            Some(')') => depth -= 1,
                            Some(_) => {}
                            None => return Err(bad()),
                        }
                        i += 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    items.push((true, chars[start + 1..i - 1].iter().collect()));
                }
                _ => return Err(bad()),
            }
        }
        match items.as_slice() {
            [(false, d)] => Ok(LabelTree::Leaf(d.parse().map_err(|_| bad())?)),
            [a, b] => {
                let sub = |(group, t): &(bool, String)| -> Result<LabelTree> {
                    let tree: LabelTree = t.parse()?;
                    if *group == matches!(tree, LabelTree::Leaf(_)) {
                        return Err(bad());
                    }
                    Ok(tree)
                };
                Ok(LabelTree::node(sub(a)?, sub(b)?))
            }
            _ => Err(bad()),
        }
    }
}

/// All labels the strictly-decreasing grammar produces over digits 0..=r.
pub fn grammar_labels(r: usize) -> Vec<String> {
    let digits: Vec<u8> = (0..=r as u8).rev().collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << digits.len()) {
        let subset: Vec<u8> = (0..digits.len()).filter(|&i| mask & (1 << i) != 0).map(|i| digits[i]).collect();
        out.extend(LabelTree::bracketings(&subset).iter().map(|t| t.to_string()));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Edge labels of the r-step rule, in the order the rule lists them.
pub fn valid_labels(r: usize) -> Result<Vec<String>> {
    let list: &[&str] = match r {
        1 => &["0", "1", "10"],
        2 => &["0", "1", "2", "10", "20", "21", "2(10)", "(21)0"],
        3 => &[
            "0",
            "1",
            "2",
            "3",
            "10",
            "20",
            "30",
            "21",
            "31",
            "32",
            "(21)0",
            "(31)0",
            "(32)0",
            "(32)1",
            "2(10)",
            "3(10)",
            "3(20)",
            "3(21)",
            "((32)1)0",
            "3((21)0)",
            "(3(21))0",
            "3(2(10))",
            "(32)(10)",
            "(3(2(10)))0",
            "(3(21))(10)",
            "(32)((21)0)",
            "3(((32)1)0)",
        ],
        _ => return Err(Error::unsupported(format!("no label grammar for r = {r}"))),
    };
    Ok(list.iter().map(|s| s.to_string()).collect())
}
