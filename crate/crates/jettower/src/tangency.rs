//! Symbolic tangency verification on vertical 2-jet spaces.
