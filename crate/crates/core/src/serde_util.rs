use std::fmt::Display;

use serde::Serializer;

/// Serializes any `Display` value as a JSON string (used for big integers
/// and rationals, which would otherwise lose precision).
pub fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn display_vec<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
