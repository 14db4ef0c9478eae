//! End-to-end acceptance checks for `pauli-lgr`. The checks live in
//! `tests/acceptance.rs`; run them with
//! `cargo test -p pauli-lgr-validation --test acceptance`.
