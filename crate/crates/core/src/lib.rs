//! Suction-sucker modelling, tactile texture perception and pneumatic gait control.

pub mod control;
pub mod fft;
pub mod lip;
pub mod locomotion;
pub mod mechanics;
pub mod seed;
pub mod spectral;
pub mod synthesis;
