#![allow(dead_code)]

pub mod triples;
