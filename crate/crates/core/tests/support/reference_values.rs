// Generated by tests/oracles/generate.py (mpmath, 40 digits). Do not edit.
#![allow(dead_code)]

/// (x, ln Γ(x))
pub const LOG_GAMMA: [(f64, f64); 20] = [
    (0.001, 6.9071788853838536825),
    (0.01, 4.5994798780420217225),
    (0.1, 2.2527126517342059599),
    (0.25, 1.2880225246980774574),
    (0.5, 0.57236494292470008707),
    (0.75, 0.20328095143129537148),
    (1.25, -0.098271836421813161464),
    (1.5, -0.12078223763524522235),
    (2.5, 0.28468287047291915963),
    (3.0, 0.69314718055994530942),
    (3.7, 1.4280723266653879219),
    (5.0, 3.1780538303479456196),
    (7.3, 7.1478925230222490328),
    (10.0, 12.801827480081469611),
    (15.5, 26.536914491115613624),
    (25.0, 54.78472939811231919),
    (50.0, 144.56574394634488601),
    (100.0, 359.13420536957539878),
    (250.25, 1129.9037609776440875),
    (1000.0, 5905.2204232091812118),
];

/// (k, t, E(S - t)+ for S ~ Gamma(k, 1))
pub const POSITIVE_PART: [(f64, f64, f64); 25] = [
    (0.5, 0.0, 0.5),
    (0.5, 0.25, 0.3395706752805995641),
    (0.5, 0.5, 0.2419707245191433498),
    (0.5, 0.75, 0.17563164372822119121),
    (0.5, 1.5, 0.070915813140218874956),
    (1.0, 0.0, 1.0),
    (1.0, 0.5, 0.6065306597126334236),
    (1.0, 1.0, 0.3678794411714423216),
    (1.0, 1.5, 0.22313016014842982893),
    (1.0, 3.0, 0.049787068367863942979),
    (2.0, 0.0, 2.0),
    (2.0, 1.0, 1.1036383235143269648),
    (2.0, 2.0, 0.54134113294645076758),
    (2.0, 3.0, 0.2489353418393197149),
    (2.0, 6.0, 0.019830017413330867384),
    (4.0, 0.0, 4.0),
    (4.0, 2.0, 2.0751410096280612757),
    (4.0, 4.0, 0.7814672592526583592),
    (4.0, 6.0, 0.23300270460663769177),
    (4.0, 12.0, 0.0029000682307709150061),
    (8.0, 0.0, 8.0),
    (8.0, 4.0, 4.0336269872675160487),
    (8.0, 8.0, 1.1166922556047754092),
    (8.0, 12.0, 0.16616829205759324406),
    (8.0, 24.0, 0.000064503510650644125937),
];

/// (alpha, mean constant, variance constant), series summed to 1e-30
pub const SECOND_ORDER: [(f64, f64, f64); 3] = [
    (1.0, -1.9316404297174389894, -8.2709233596795897139),
    (2.0, -0.56883739669234802216, -3.5273222037359215536),
    (5.0, 0.16511204250184966014, -0.84841740280440913943),
];
