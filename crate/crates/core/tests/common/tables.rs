//! Published energy tables: `(m, r_i, β, levels)` for each well depth.

pub struct Row {
    pub m: i32,
    pub r_i: f64,
    pub beta: f64,
    pub levels: &'static [f64],
}

const fn row(m: i32, r_i: f64, beta: f64, levels: &'static [f64]) -> Row {
    Row { m, r_i, beta, levels }
}

pub const TABLE1_V: f64 = 25.0;
pub const TABLE2_V: f64 = 100.0;

pub const TABLE1: &[Row] = &[
    row(0, 0.2, 0.0, &[5.58, 10.10, 22.69]),
    row(0, 0.2, 1.0, &[5.10, 10.07, 22.24]),
    row(0, 0.2, 5.0, &[-2.42, 3.61, 16.27]),
    row(0, 0.5, 0.0, &[10.62, 13.09]),
    row(0, 0.5, 1.0, &[10.15, 13.05]),
    row(0, 0.5, 5.0, &[2.97, 7.39]),
    row(0, 0.8, 0.0, &[19.90, 21.64]),
    row(0, 0.8, 1.0, &[19.45, 21.59]),
    row(0, 0.8, 5.0, &[12.82, 15.27]),
    row(1, 0.2, 0.0, &[10.10, 17.47]),
    row(1, 0.2, 1.0, &[9.18, 17.86]),
    row(1, 0.2, 5.0, &[-2.29, 9.59]),
    row(1, 0.5, 0.0, &[13.09, 18.76]),
    row(1, 0.5, 1.0, &[12.18, 19.14]),
    row(1, 0.5, 5.0, &[1.37, 13.05]),
    row(1, 0.8, 0.0, &[21.64]),
    row(1, 0.8, 1.0, &[20.78]),
    row(1, 0.8, 5.0, &[11.25, 18.18]),
];

pub const TABLE2: &[Row] = &[
    row(0, 0.2, 0.0, &[8.72, 12.77, 36.62, 43.42, 79.52, 88.94]),
    row(0, 0.2, 2.0, &[6.97, 12.47, 34.95, 43.08, 77.90, 88.50]),
    row(0, 0.2, 10.0, &[-17.01, -14.43, 8.23, 20.60, 53.15, 64.08]),
    row(0, 0.5, 0.0, &[19.23, 21.22, 71.61, 74.30]),
    row(0, 0.5, 2.0, &[17.54, 20.91, 69.98, 73.91]),
    row(0, 0.5, 10.0, &[-7.93, -2.62, 45.67, 50.05]),
    row(0, 0.8, 0.0, &[54.30, 55.61]),
    row(0, 0.8, 2.0, &[52.66, 55.24]),
    row(0, 0.8, 10.0, &[26.57, 32.94]),
    row(1, 0.2, 0.0, &[12.77, 21.74, 43.42, 57.91, 88.94]),
    row(1, 0.2, 2.0, &[9.56, 22.71, 40.43, 58.84, 86.19]),
    row(1, 0.2, 10.0, &[-21.43, -12.83, 9.39, 36.34, 62.39]),
    row(1, 0.5, 0.0, &[21.22, 27.03, 74.30, 81.32]),
    row(1, 0.5, 2.0, &[18.15, 28.05, 71.39, 82.15]),
    row(1, 0.5, 10.0, &[-12.64, 2.34, 45.78, 59.81]),
    row(1, 0.8, 0.0, &[55.61, 59.49]),
    row(1, 0.8, 2.0, &[52.69, 60.38]),
    row(1, 0.8, 10.0, &[21.45, 40.12]),
];
