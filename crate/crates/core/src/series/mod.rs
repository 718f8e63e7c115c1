//! Ratio sequences and acceleration.
