#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod connection;
pub mod decide;
pub mod det;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod parabolic;
pub mod poly;
pub mod quaternion;
pub mod rational;
pub mod rep;
pub mod sparse;
