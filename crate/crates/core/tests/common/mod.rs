pub mod xprec;
