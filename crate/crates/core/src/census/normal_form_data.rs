// Generated by tools/normal_form_invariants.py; do not edit by hand.

/// `(coefficient, exponents of (a0, a1, a2))` terms of J2..J10 of
/// `y^2 = x(x-1)(x^3 + a2 x^2 + a1 x + a0)`.
#[rustfmt::skip]
pub(crate) const NORMAL_FORM_J: [&[(i64, [u8; 3])]; 5] = [
    // J2
    &[(12, [0, 0, 2]), (-32, [0, 1, 0]), (8, [0, 1, 1]), (12, [0, 2, 0]), (-48, [1, 0, 0]), (-32, [1, 0, 1])],
    // J4
    &[(6, [0, 0, 4]), (-32, [0, 1, 2]), (8, [0, 1, 3]), (32, [0, 2, 0]), (-32, [0, 2, 1]), (4, [0, 2, 2]), (8, [0, 3, 1]), (6, [0, 4, 0]), (32, [1, 0, 1]), (-16, [1, 0, 2]), (128, [1, 1, 0]), (-64, [1, 1, 1]), (-32, [1, 1, 2]), (-16, [1, 2, 0]), (-32, [1, 2, 1]), (288, [2, 0, 0]), (128, [2, 0, 1]), (32, [2, 0, 2]), (32, [2, 1, 0])],
    // J6
    &[(4, [0, 0, 6]), (-32, [0, 1, 4]), (8, [0, 1, 5]), (64, [0, 2, 2]), (-64, [0, 2, 3]), (-4, [0, 2, 4]), (128, [0, 3, 1]), (-16, [0, 3, 3]), (64, [0, 4, 0]), (64, [0, 4, 1]), (-4, [0, 4, 2]), (32, [0, 5, 0]), (8, [0, 5, 1]), (4, [0, 6, 0]), (64, [1, 0, 3]), (16, [1, 0, 4]), (32, [1, 0, 5]), (-256, [1, 1, 1]), (-128, [1, 1, 3]), (64, [1, 1, 4]), (-256, [1, 2, 0]), (-64, [1, 2, 1]), (-288, [1, 2, 2]), (-128, [1, 3, 1]), (-64, [1, 3, 2]), (16, [1, 4, 0]), (-32, [1, 4, 1]), (256, [2, 0, 0]), (128, [2, 0, 1]), (192, [2, 0, 2]), (64, [2, 0, 4]), (128, [2, 1, 0]), (384, [2, 1, 1]), (-64, [2, 1, 2]), (128, [2, 1, 3]), (192, [2, 2, 0]), (64, [2, 2, 2]), (64, [2, 3, 0]), (512, [3, 0, 0]), (128, [3, 0, 1]), (-256, [3, 0, 2]), (128, [3, 1, 0]), (-256, [3, 1, 1]), (256, [4, 0, 0])],
    // J8
    &[(3, [0, 0, 8]), (-32, [0, 1, 6]), (8, [0, 1, 7]), (96, [0, 2, 4]), (-96, [0, 2, 5]), (-12, [0, 2, 6]), (384, [0, 3, 3]), (-72, [0, 3, 5]), (-256, [0, 4, 0]), (-512, [0, 4, 1]), (320, [0, 4, 2]), (320, [0, 4, 3]), (-110, [0, 4, 4]), (-512, [0, 5, 0]), (-128, [0, 5, 1]), (480, [0, 5, 2]), (-72, [0, 5, 3]), (-160, [0, 6, 0]), (288, [0, 6, 1]), (-12, [0, 6, 2]), (64, [0, 7, 0]), (8, [0, 7, 1]), (3, [0, 8, 0]), (96, [1, 0, 5]), (48, [1, 0, 6]), (64, [1, 0, 7]), (-768, [1, 1, 3]), (-384, [1, 1, 4]), (-192, [1, 1, 5]), (288, [1, 1, 6]), (1536, [1, 2, 1]), (768, [1, 2, 2]), (-576, [1, 2, 3]), (-1200, [1, 2, 4]), (480, [1, 2, 5]), (768, [1, 3, 1]), (-1920, [1, 3, 3]), (320, [1, 3, 4]), (-1280, [1, 4, 0]), (-800, [1, 4, 1]), (-1200, [1, 4, 2]), (-896, [1, 5, 0]), (-192, [1, 5, 1]), (-96, [1, 5, 2]), (48, [1, 6, 0]), (-32, [1, 6, 1]), (512, [2, 0, 2]), (-128, [2, 0, 3]), (-1056, [2, 0, 4]), (-896, [2, 0, 5]), (-160, [2, 0, 6]), (-2048, [2, 1, 0]), (512, [2, 1, 1]), (7808, [2, 1, 2]), (3968, [2, 1, 3]), (-800, [2, 1, 4]), (-128, [2, 1, 5]), (-5888, [2, 2, 0]), (7296, [2, 2, 1]), (9280, [2, 2, 2]), (320, [2, 2, 4]), (-640, [2, 3, 0]), (3968, [2, 3, 1]), (-576, [2, 3, 2]), (384, [2, 3, 3]), (-1056, [2, 4, 0]), (-384, [2, 4, 1]), (96, [2, 4, 2]), (96, [2, 5, 0]), (-3072, [3, 0, 0]), (-8192, [3, 0, 1]), (-1536, [3, 0, 2]), (-640, [3, 0, 3]), (-1280, [3, 0, 4]), (-512, [3, 0, 5]), (-24064, [3, 1, 0]), (-5120, [3, 1, 1]), (7296, [3, 1, 2]), (768, [3, 1, 3]), (-512, [3, 1, 4]), (-1536, [3, 2, 0]), (7808, [3, 2, 1]), (768, [3, 2, 2]), (-128, [3, 3, 0]), (-768, [3, 3, 1]), (-26880, [4, 0, 0]), (-24064, [4, 0, 1]), (-5888, [4, 0, 2]), (-256, [4, 0, 4]), (-8192, [4, 1, 0]), (512, [4, 1, 1]), (1536, [4, 1, 2]), (512, [4, 2, 0]), (-3072, [5, 0, 0]), (-2048, [5, 0, 1])],
    // J10
    &[(256, [2, 2, 2]), (512, [2, 2, 3]), (256, [2, 2, 4]), (-1024, [2, 3, 0]), (-2048, [2, 3, 1]), (-512, [2, 3, 2]), (512, [2, 3, 3]), (-2048, [2, 4, 0]), (-2048, [2, 4, 1]), (256, [2, 4, 2]), (-1024, [2, 5, 0]), (-1024, [3, 0, 3]), (-2048, [3, 0, 4]), (-1024, [3, 0, 5]), (4608, [3, 1, 1]), (9216, [3, 1, 2]), (2560, [3, 1, 3]), (-2048, [3, 1, 4]), (9216, [3, 2, 1]), (9728, [3, 2, 2]), (-512, [3, 2, 3]), (-2048, [3, 3, 0]), (2560, [3, 3, 1]), (512, [3, 3, 2]), (-2048, [3, 4, 0]), (-6912, [4, 0, 0]), (-13824, [4, 0, 1]), (-6912, [4, 0, 2]), (-2048, [4, 0, 3]), (-2048, [4, 0, 4]), (-13824, [4, 1, 0]), (-4608, [4, 1, 1]), (9216, [4, 1, 2]), (-2048, [4, 1, 3]), (-6912, [4, 2, 0]), (9216, [4, 2, 1]), (256, [4, 2, 2]), (-1024, [4, 3, 0]), (-13824, [5, 0, 0]), (-13824, [5, 0, 1]), (-1024, [5, 0, 3]), (-13824, [5, 1, 0]), (4608, [5, 1, 1]), (-6912, [6, 0, 0])],
];
