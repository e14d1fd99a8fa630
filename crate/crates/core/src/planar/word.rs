use std::fmt;

/// Color carried by one leg of a trace word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ColorLabel {
    /// An external color, distinct from every other fixed label.
    Fixed(u8),
    /// A color summed over all `n` values; equal labels share one sum.
    Summed(u8),
}

/// The word `w` of a single-trace observable `(1/N) tr M_{w₁}⋯M_{w_L}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TraceWord(pub Vec<ColorLabel>);

impl TraceWord {
    /// Word of fixed colors, one letter per leg: `"abab"`.
    pub fn fixed(letters: &str) -> Self {
        TraceWord(letters.bytes().map(|b| ColorLabel::Fixed(b - b'a')).collect())
    }

    /// Word of summed colors: `"abab"` means `Σ_{a,b} tr M_a M_b M_a M_b`.
    pub fn summed(letters: &str) -> Self {
        TraceWord(letters.bytes().map(|b| ColorLabel::Summed(b - b'a')).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[ColorLabel] {
        &self.0
    }

    pub fn is_all_fixed(&self) -> bool {
        self.0.iter().all(|l| matches!(l, ColorLabel::Fixed(_)))
    }

    /// Sub-word on the given (increasing) positions.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        TraceWord(positions.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            match *l {
                ColorLabel::Fixed(c) => write!(f, "{}", (b'a' + c) as char)?,
                ColorLabel::Summed(c) => write!(f, "{}", (b'A' + c) as char)?,
            }
        }
        Ok(())
    }
}

/// The two quartic vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VertexType {
    /// `(g₁/4) tr M_a M_b M_a M_b`
    Crossing,
    /// `(g₂/2) tr M_a M_a M_b M_b`
    Tangency,
}

impl VertexType {
    /// Which of the vertex's two color indices each half-edge carries.
    pub fn pattern(self) -> [usize; 4] {
        match self {
            VertexType::Crossing => [0, 1, 0, 1],
            VertexType::Tangency => [0, 0, 1, 1],
        }
    }
}
