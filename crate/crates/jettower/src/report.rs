//! Verification report records.
