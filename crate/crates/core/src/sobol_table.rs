//! Direction-number parameters for the Sobol generator, dimensions 2..=100.
//! Joe and Kuo's `new-joe-kuo-6` initialisation; dimension 1 is the plain
//! van der Corput sequence and needs no parameters.

pub(crate) struct JoeKuoDim {
    pub degree: u32,
    pub poly: u32,
    pub m: &'static [u32],
}

pub(crate) static JOE_KUO: [JoeKuoDim; 99] = [
    JoeKuoDim { degree: 1, poly: 0, m: &[1] },
    JoeKuoDim { degree: 2, poly: 1, m: &[1, 3] },
    JoeKuoDim { degree: 3, poly: 1, m: &[1, 3, 1] },
    JoeKuoDim { degree: 3, poly: 2, m: &[1, 1, 1] },
    JoeKuoDim { degree: 4, poly: 1, m: &[1, 1, 3, 3] },
    JoeKuoDim { degree: 4, poly: 4, m: &[1, 3, 5, 13] },
    JoeKuoDim { degree: 5, poly: 2, m: &[1, 1, 5, 5, 17] },
    JoeKuoDim { degree: 5, poly: 4, m: &[1, 1, 5, 5, 5] },
    JoeKuoDim { degree: 5, poly: 7, m: &[1, 1, 7, 11, 19] },
    JoeKuoDim { degree: 5, poly: 11, m: &[1, 1, 5, 1, 1] },
    JoeKuoDim { degree: 5, poly: 13, m: &[1, 1, 1, 3, 11] },
    JoeKuoDim { degree: 5, poly: 14, m: &[1, 3, 5, 5, 31] },
    JoeKuoDim { degree: 6, poly: 1, m: &[1, 3, 3, 9, 7, 49] },
    JoeKuoDim { degree: 6, poly: 13, m: &[1, 1, 1, 15, 21, 21] },
    JoeKuoDim { degree: 6, poly: 16, m: &[1, 3, 1, 13, 27, 49] },
    JoeKuoDim { degree: 6, poly: 19, m: &[1, 1, 1, 15, 7, 5] },
    JoeKuoDim { degree: 6, poly: 22, m: &[1, 3, 1, 15, 13, 25] },
    JoeKuoDim { degree: 6, poly: 25, m: &[1, 1, 5, 5, 19, 61] },
    JoeKuoDim { degree: 7, poly: 1, m: &[1, 3, 7, 11, 23, 15, 103] },
    JoeKuoDim { degree: 7, poly: 4, m: &[1, 3, 7, 13, 13, 15, 69] },
    JoeKuoDim { degree: 7, poly: 7, m: &[1, 1, 3, 13, 7, 35, 63] },
    JoeKuoDim { degree: 7, poly: 8, m: &[1, 3, 5, 9, 1, 25, 53] },
    JoeKuoDim { degree: 7, poly: 14, m: &[1, 3, 1, 13, 9, 35, 107] },
    JoeKuoDim { degree: 7, poly: 19, m: &[1, 3, 1, 5, 27, 61, 31] },
    JoeKuoDim { degree: 7, poly: 21, m: &[1, 1, 5, 11, 19, 41, 61] },
    JoeKuoDim { degree: 7, poly: 28, m: &[1, 3, 5, 3, 3, 13, 69] },
    JoeKuoDim { degree: 7, poly: 31, m: &[1, 1, 7, 13, 1, 19, 1] },
    JoeKuoDim { degree: 7, poly: 32, m: &[1, 3, 7, 5, 13, 19, 59] },
    JoeKuoDim { degree: 7, poly: 37, m: &[1, 1, 3, 9, 25, 29, 41] },
    JoeKuoDim { degree: 7, poly: 41, m: &[1, 3, 5, 13, 23, 1, 55] },
    JoeKuoDim { degree: 7, poly: 42, m: &[1, 3, 7, 3, 13, 59, 17] },
    JoeKuoDim { degree: 7, poly: 50, m: &[1, 3, 1, 3, 5, 53, 69] },
    JoeKuoDim { degree: 7, poly: 55, m: &[1, 1, 5, 5, 23, 33, 13] },
    JoeKuoDim { degree: 7, poly: 56, m: &[1, 1, 7, 7, 1, 61, 123] },
    JoeKuoDim { degree: 7, poly: 59, m: &[1, 1, 7, 9, 13, 61, 49] },
    JoeKuoDim { degree: 7, poly: 62, m: &[1, 3, 3, 5, 3, 55, 33] },
    JoeKuoDim { degree: 8, poly: 14, m: &[1, 3, 1, 15, 31, 13, 49, 245] },
    JoeKuoDim { degree: 8, poly: 21, m: &[1, 3, 5, 15, 31, 59, 63, 97] },
    JoeKuoDim { degree: 8, poly: 22, m: &[1, 3, 1, 11, 11, 11, 77, 249] },
    JoeKuoDim { degree: 8, poly: 38, m: &[1, 3, 1, 11, 27, 43, 71, 9] },
    JoeKuoDim { degree: 8, poly: 47, m: &[1, 1, 7, 15, 21, 11, 81, 45] },
    JoeKuoDim { degree: 8, poly: 49, m: &[1, 3, 7, 3, 25, 31, 65, 79] },
    JoeKuoDim { degree: 8, poly: 50, m: &[1, 3, 1, 1, 19, 11, 3, 205] },
    JoeKuoDim { degree: 8, poly: 52, m: &[1, 1, 5, 9, 19, 21, 29, 157] },
    JoeKuoDim { degree: 8, poly: 56, m: &[1, 3, 7, 11, 1, 33, 89, 185] },
    JoeKuoDim { degree: 8, poly: 67, m: &[1, 3, 3, 3, 15, 9, 79, 71] },
    JoeKuoDim { degree: 8, poly: 70, m: &[1, 3, 7, 11, 15, 39, 119, 27] },
    JoeKuoDim { degree: 8, poly: 84, m: &[1, 1, 3, 1, 11, 31, 97, 225] },
    JoeKuoDim { degree: 8, poly: 97, m: &[1, 1, 1, 3, 23, 43, 57, 177] },
    JoeKuoDim { degree: 8, poly: 103, m: &[1, 3, 7, 7, 17, 17, 37, 71] },
    JoeKuoDim { degree: 8, poly: 115, m: &[1, 3, 1, 5, 27, 63, 123, 213] },
    JoeKuoDim { degree: 8, poly: 122, m: &[1, 1, 3, 5, 11, 43, 53, 133] },
    JoeKuoDim { degree: 9, poly: 8, m: &[1, 3, 5, 5, 29, 17, 47, 173, 479] },
    JoeKuoDim { degree: 9, poly: 13, m: &[1, 3, 3, 11, 3, 1, 109, 9, 69] },
    JoeKuoDim { degree: 9, poly: 16, m: &[1, 1, 1, 5, 17, 39, 23, 5, 343] },
    JoeKuoDim { degree: 9, poly: 22, m: &[1, 3, 1, 5, 25, 15, 31, 103, 499] },
    JoeKuoDim { degree: 9, poly: 25, m: &[1, 1, 1, 11, 11, 17, 63, 105, 183] },
    JoeKuoDim { degree: 9, poly: 44, m: &[1, 1, 5, 11, 9, 29, 97, 231, 363] },
    JoeKuoDim { degree: 9, poly: 47, m: &[1, 1, 5, 15, 19, 45, 41, 7, 383] },
    JoeKuoDim { degree: 9, poly: 52, m: &[1, 3, 7, 7, 31, 19, 83, 137, 221] },
    JoeKuoDim { degree: 9, poly: 55, m: &[1, 1, 1, 3, 23, 15, 111, 223, 83] },
    JoeKuoDim { degree: 9, poly: 59, m: &[1, 1, 5, 13, 31, 15, 55, 25, 161] },
    JoeKuoDim { degree: 9, poly: 62, m: &[1, 1, 3, 13, 25, 47, 39, 87, 257] },
    JoeKuoDim { degree: 9, poly: 67, m: &[1, 1, 1, 11, 21, 53, 125, 249, 293] },
    JoeKuoDim { degree: 9, poly: 74, m: &[1, 1, 7, 11, 11, 7, 57, 79, 323] },
    JoeKuoDim { degree: 9, poly: 81, m: &[1, 1, 5, 5, 17, 13, 81, 3, 131] },
    JoeKuoDim { degree: 9, poly: 82, m: &[1, 1, 7, 13, 23, 7, 65, 251, 475] },
    JoeKuoDim { degree: 9, poly: 87, m: &[1, 3, 5, 1, 9, 43, 3, 149, 11] },
    JoeKuoDim { degree: 9, poly: 91, m: &[1, 1, 3, 13, 31, 13, 13, 255, 487] },
    JoeKuoDim { degree: 9, poly: 94, m: &[1, 3, 3, 1, 5, 63, 89, 91, 127] },
    JoeKuoDim { degree: 9, poly: 103, m: &[1, 1, 3, 3, 1, 19, 123, 127, 237] },
    JoeKuoDim { degree: 9, poly: 104, m: &[1, 1, 5, 7, 23, 31, 37, 243, 289] },
    JoeKuoDim { degree: 9, poly: 109, m: &[1, 1, 5, 11, 17, 53, 117, 183, 491] },
    JoeKuoDim { degree: 9, poly: 122, m: &[1, 1, 1, 5, 1, 13, 13, 209, 345] },
    JoeKuoDim { degree: 9, poly: 124, m: &[1, 1, 3, 15, 1, 57, 115, 7, 33] },
    JoeKuoDim { degree: 9, poly: 137, m: &[1, 3, 1, 11, 7, 43, 81, 207, 175] },
    JoeKuoDim { degree: 9, poly: 138, m: &[1, 3, 1, 1, 15, 27, 63, 255, 49] },
    JoeKuoDim { degree: 9, poly: 143, m: &[1, 3, 5, 3, 27, 61, 105, 171, 305] },
    JoeKuoDim { degree: 9, poly: 145, m: &[1, 1, 5, 3, 1, 3, 57, 249, 149] },
    JoeKuoDim { degree: 9, poly: 152, m: &[1, 1, 3, 5, 5, 57, 15, 13, 159] },
    JoeKuoDim { degree: 9, poly: 157, m: &[1, 1, 1, 11, 7, 11, 105, 141, 225] },
    JoeKuoDim { degree: 9, poly: 167, m: &[1, 3, 3, 5, 27, 59, 121, 101, 271] },
    JoeKuoDim { degree: 9, poly: 173, m: &[1, 3, 5, 9, 11, 49, 51, 59, 115] },
    JoeKuoDim { degree: 9, poly: 176, m: &[1, 1, 7, 1, 23, 45, 125, 71, 419] },
    JoeKuoDim { degree: 9, poly: 181, m: &[1, 1, 3, 5, 23, 5, 105, 109, 75] },
    JoeKuoDim { degree: 9, poly: 182, m: &[1, 1, 7, 15, 7, 11, 67, 121, 453] },
    JoeKuoDim { degree: 9, poly: 185, m: &[1, 3, 7, 3, 9, 13, 31, 27, 449] },
    JoeKuoDim { degree: 9, poly: 191, m: &[1, 3, 1, 15, 19, 39, 39, 89, 15] },
    JoeKuoDim { degree: 9, poly: 194, m: &[1, 1, 1, 1, 1, 33, 73, 145, 379] },
    JoeKuoDim { degree: 9, poly: 199, m: &[1, 3, 1, 15, 15, 43, 29, 13, 483] },
    JoeKuoDim { degree: 9, poly: 218, m: &[1, 1, 7, 3, 19, 27, 85, 131, 431] },
    JoeKuoDim { degree: 9, poly: 220, m: &[1, 3, 3, 3, 5, 35, 23, 195, 349] },
    JoeKuoDim { degree: 9, poly: 227, m: &[1, 3, 3, 7, 9, 27, 39, 59, 297] },
    JoeKuoDim { degree: 9, poly: 229, m: &[1, 1, 3, 9, 11, 17, 13, 241, 157] },
    JoeKuoDim { degree: 9, poly: 230, m: &[1, 3, 7, 15, 25, 57, 33, 189, 213] },
    JoeKuoDim { degree: 9, poly: 234, m: &[1, 1, 7, 1, 9, 55, 73, 83, 217] },
    JoeKuoDim { degree: 9, poly: 236, m: &[1, 3, 3, 13, 19, 27, 23, 113, 249] },
    JoeKuoDim { degree: 9, poly: 241, m: &[1, 3, 5, 3, 23, 43, 3, 253, 479] },
    JoeKuoDim { degree: 9, poly: 244, m: &[1, 1, 5, 5, 11, 5, 45, 117, 217] },
];
