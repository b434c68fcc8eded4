//! Certification of nondeterministic and deterministic directions.
