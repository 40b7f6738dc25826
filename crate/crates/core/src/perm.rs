//! Permutations of `{1, ..., n}`.
//!
//! Points are 1-based in every textual form (cycle notation, one-line
//! notation, error messages) and 0-based everywhere in code.

use std::fmt;

use thiserror::Error;

/// Errors from parsing or combining permutations.
///
/// Positions are 1-based character columns into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("point {point} at column {column} is out of range 1..={degree}")]
    OutOfRange {
        point: usize,
        column: usize,
        degree: usize,
    },
    #[error("point {point} at column {column} is repeated")]
    RepeatedPoint { point: usize, column: usize },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("one-line notation has {found} entries, expected {degree}")]
    WrongLength { found: usize, degree: usize },
    #[error("image list is not a bijection of 1..={degree}")]
    NotBijective { degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

/// A bijection of `{0, ..., n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || seen[i] {
                return Err(PermError::NotBijective { degree });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images, as printed in tables.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let zero_based = images
            .iter()
            .map(|&i| i.checked_sub(1).ok_or(PermError::NotBijective { degree }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero_based)
    }

    /// Builds a permutation from disjoint 0-based cycles.
    ///
    /// # Panics
    ///
    /// Panics if the cycles overlap or mention a point outside the degree.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                assert!(a < degree && !moved[a], "bad cycle {cycle:?}");
                moved[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// Parses `id`, one-line notation `[i1 ... in]`, or a product of
    /// disjoint cycles such as `(1342)` or `(1 3)(2 10)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        Parser::new(text, degree).parse()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `p.compose(q)` applies `q` first: the result maps `i` to `p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(self.compose_unchecked(q))
    }

    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation {
            images: q.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lengths.iter().sum();
        lengths.extend(std::iter::repeat(1).take(self.degree() - moved));
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Cycle notation: `id` for the identity, no separators for degree at
    /// most 9 and single spaces otherwise.
    pub fn to_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        let sep = if self.degree() <= 9 { "" } else { " " };
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            let points: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            out.push_str(&points.join(sep));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[deg {}]", self.to_cycles(), self.degree())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    degree: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, degree: usize) -> Self {
        Parser {
            chars: text.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            pos: 0,
            degree,
            text,
        }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(c, _)| c)
            .unwrap_or(self.chars.len() + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: impl Into<String>) -> PermError {
        PermError::Syntax {
            column: self.column(),
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<Permutation, PermError> {
        self.skip_ws();
        let result = match self.peek() {
            None => return Err(self.syntax("empty permutation")),
            Some('[') => self.one_line()?,
            Some('(') => self.cycle_product()?,
            Some(_) if self.text.trim() == "id" => {
                self.pos = self.chars.len();
                Permutation::identity(self.degree)
            }
            Some(c) => return Err(self.syntax(format!("unexpected character {c:?}"))),
        };
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.syntax("trailing input"));
        }
        Ok(result)
    }

    /// Reads a run of digits and returns `(value, column, digits)`.
    fn number(&mut self) -> Result<(usize, usize, Vec<usize>), PermError> {
        let column = self.column();
        let mut value: usize = 0;
        let mut digits = Vec::new();
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or_else(|| self.syntax("number too large"))?;
            digits.push(d as usize);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.syntax("expected a point"));
        }
        Ok((value, column, digits))
    }

    fn check_point(&self, point: usize, column: usize) -> Result<usize, PermError> {
        if point == 0 || point > self.degree {
            return Err(PermError::OutOfRange {
                point,
                column,
                degree: self.degree,
            });
        }
        Ok(point - 1)
    }

    fn one_line(&mut self) -> Result<Permutation, PermError> {
        self.pos += 1;
        let mut images = Vec::new();
        let mut seen = vec![false; self.degree];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                Some(',') if !images.is_empty() => self.pos += 1,
                Some(c) if c.is_ascii_digit() => {
                    let (point, column, _) = self.number()?;
                    let p = self.check_point(point, column)?;
                    if seen[p] {
                        return Err(PermError::RepeatedPoint { point, column });
                    }
                    seen[p] = true;
                    images.push(p);
                }
                Some(c) => return Err(self.syntax(format!("unexpected character {c:?}"))),
                None => return Err(self.syntax("unterminated '['")),
            }
        }
        if images.len() != self.degree {
            return Err(PermError::WrongLength {
                found: images.len(),
                degree: self.degree,
            });
        }
        Ok(Permutation { images })
    }

    fn cycle_product(&mut self) -> Result<Permutation, PermError> {
        let mut images: Vec<usize> = (0..self.degree).collect();
        let mut used = vec![false; self.degree];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('(') => {
                    let cycle = self.cycle()?;
                    for &(p, point, column) in &cycle {
                        if used[p] {
                            return Err(PermError::RepeatedPoint { point, column });
                        }
                        used[p] = true;
                    }
                    for k in 0..cycle.len() {
                        images[cycle[k].0] = cycle[(k + 1) % cycle.len()].0;
                    }
                }
                Some(c) => return Err(self.syntax(format!("unexpected character {c:?}"))),
            }
        }
        Ok(Permutation { images })
    }

    /// One parenthesised cycle as `(index, point, column)` triples.
    fn cycle(&mut self) -> Result<Vec<(usize, usize, usize)>, PermError> {
        self.pos += 1;
        let mut tokens = Vec::new();
        let mut separated = false;
        loop {
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some(c) if c.is_whitespace() || c == ',' => {
                    separated = true;
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() => tokens.push(self.number()?),
                Some(c) => return Err(self.syntax(format!("unexpected character {c:?}"))),
                None => return Err(self.syntax("unterminated '('")),
            }
        }
        let mut points = Vec::new();
        for (value, column, digits) in tokens {
            if !separated && digits.len() > 1 {
                if self.degree > 9 {
                    return Err(PermError::Syntax {
                        column,
                        message: "cycles need separators when the degree exceeds 9".into(),
                    });
                }
                // compact form: one point per digit
                for (k, point) in digits.into_iter().enumerate() {
                    points.push((self.check_point(point, column + k)?, point, column + k));
                }
            } else {
                points.push((self.check_point(value, column)?, value, column));
            }
        }
        Ok(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn parses_transposition_and_identity() {
        assert_eq!(p("(12)", 3).one_based_images(), vec![2, 1, 3]);
        assert_eq!(p("id", 4).one_based_images(), vec![1, 2, 3, 4]);
        assert_eq!(p("(1342)", 4).one_based_images(), vec![3, 1, 4, 2]);
        assert_eq!(p("(1 3 4 2)", 4), p("(1342)", 4));
        assert_eq!(p("[3 1 4 2]", 4), p("(1342)", 4));
        assert_eq!(p("(1 4 2 10)", 10).apply(9), 0);
        assert!(p("()", 3).is_identity());
        assert!(p("(2)", 3).is_identity());
    }

    #[test]
    fn parse_errors_carry_columns() {
        assert_eq!(
            Permutation::parse("(121)", 3),
            Err(PermError::RepeatedPoint {
                point: 1,
                column: 4
            })
        );
        assert_eq!(
            Permutation::parse("(12)(3 1)", 3),
            Err(PermError::RepeatedPoint {
                point: 1,
                column: 8
            })
        );
        assert_eq!(
            Permutation::parse("(15)", 4),
            Err(PermError::OutOfRange {
                point: 5,
                column: 3,
                degree: 4
            })
        );
        assert!(matches!(
            Permutation::parse("(12", 3),
            Err(PermError::Syntax { column: 4, .. })
        ));
        assert!(matches!(
            Permutation::parse("(1x)", 3),
            Err(PermError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            Permutation::parse("(110)", 10),
            Err(PermError::Syntax { .. })
        ));
        assert_eq!(
            Permutation::parse("[1 2]", 3),
            Err(PermError::WrongLength {
                found: 2,
                degree: 3
            })
        );
        assert_eq!(Permutation::parse("id", 0), Err(PermError::ZeroDegree));
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = p("(1324)", 4);
        let b = p("(34)", 4);
        let c = a.compose(&b).unwrap();
        assert_eq!(c.one_based_images(), vec![3, 4, 1, 2]);
        assert_eq!(c.to_cycles(), "(13)(24)");
        let t = p("(12)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(Permutation::identity(4).compose(&a).unwrap(), a);
        assert_eq!(
            a.compose(&t),
            Err(PermError::DegreeMismatch { left: 4, right: 2 })
        );
    }

    #[test]
    fn inverse_order_and_printing() {
        let a = p("(1324)", 4);
        assert_eq!(a.inverse().to_cycles(), "(1423)");
        assert_eq!(p("(12)(34)", 4).order(), 2);
        assert_eq!(p("(123)(45)", 5).order(), 6);
        assert_eq!(Permutation::from_one_based(&[2, 1, 3]).unwrap().to_cycles(), "(12)");
        assert_eq!(Permutation::identity(3).to_cycles(), "id");
        assert_eq!(p("(1 4 2 10)", 10).to_cycles(), "(1 4 2 10)");
        assert_eq!(p("(3 1 2)", 3).to_cycles(), "(123)");
        assert_eq!(p("(12)(345)", 6).cycle_type(), vec![1, 2, 3]);
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }
}
