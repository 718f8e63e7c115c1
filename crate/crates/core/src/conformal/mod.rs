//! Conformal-map predictions.
