#![allow(dead_code)]

pub mod reference;
pub mod scalar;
pub mod tables;
