//! Jet-differential rank combinatorics and vanishing predicates.
