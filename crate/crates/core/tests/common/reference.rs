//! Reference values computed with mpmath at 40 significant digits.

#![allow(clippy::excessive_precision)]

use rashba_ring::bessel::Family;

/// (family, order, Re z, Im z, Re C_n(z), Im C_n(z))
pub const BESSEL_REFERENCE: &[(Family, i32, f64, f64, f64, f64)] = &[
    (Family::J, 0, 1.0, 0.0, 0.76519768655796655145, 0.0),
    (Family::J, 1, 1.0, 0.0, 0.44005058574493351596, 0.0),
    (Family::J, 3, 2.0, 0.5, 0.11840835185112601436, 0.081640449379048345779),
    (Family::J, 0, 0.3, 0.1, 0.98004390220662204356, -0.014850405885365544759),
    (Family::J, 2, 5.0, 3.0, -0.20330780099412725867, -2.8380770117542559816),
    (Family::J, 5, 8.0, -2.0, 0.42184872927486756581, 0.6318537083562861546),
    (
        Family::J,
        1,
        14.9,
        0.2,
        0.21099843778327559309,
        -0.0015267593907205906093,
    ),
    (
        Family::J,
        0,
        15.1,
        1.0,
        -0.061127260072321845088,
        -0.23581253625328602739,
    ),
    (Family::J, 4, 20.0, 5.0, 7.7875986234580618013, -9.1023716099019960826),
    (
        Family::J,
        10,
        30.0,
        -10.0,
        -831.19264110299935558,
        477.02342265867689911,
    ),
    (Family::J, 1, 1.2, 9.0, 933.3763351293724554, 429.09631610599192203),
    (
        Family::J,
        7,
        3.0,
        0.5,
        0.0013842603260003652541,
        0.0024659638260204523288,
    ),
    (Family::J, 2, 45.0, 2.0, -0.42732483185384423386, 0.1259888423603984237),
    (
        Family::J,
        25,
        10.0,
        4.0,
        -4.1694607385578559413e-8,
        3.5497613006618263028e-8,
    ),
    (
        Family::J,
        0,
        0.01,
        0.002,
        0.999976000118999816,
        -9.9998800004522218452e-6,
    ),
    (
        Family::J,
        30,
        40.0,
        1.0,
        -0.12683854883032025258,
        0.084573994400648082371,
    ),
    (Family::Y, 0, 1.0, 0.0, 0.088256964215676957983, 0.0),
    (Family::Y, 1, 1.0, 0.0, -0.78121282130028871655, 0.0),
    (Family::Y, 3, 2.0, 0.5, -0.91914562810764887016, 0.44245094248749153231),
    (Family::Y, 0, 0.3, 0.1, -0.77490822435572481681, 0.22213204768736423025),
    (Family::Y, 2, 5.0, 3.0, 2.8551415184338755088, -0.21300106712534863022),
    (Family::Y, 5, 8.0, -2.0, 0.66904692342412414827, -0.37420370797409021655),
    (
        Family::Y,
        1,
        14.9,
        0.2,
        0.00081782486737288194776,
        0.041574305937356862305,
    ),
    (
        Family::Y,
        0,
        15.1,
        1.0,
        0.31050729988789736068,
        -0.050891804949389461925,
    ),
    (Family::Y, 4, 20.0, 5.0, 9.1031214378286773867, 7.7865239717091504664),
    (Family::Y, 10, 30.0, -10.0, 477.02343105476185523, 831.19263409320092292),
    (Family::Y, 1, 1.2, 9.0, -429.0963485676944112, 933.3763451562261799),
    (Family::Y, 7, 3.0, 0.5, -9.3085798955152268357, 15.143405036545409274),
    (
        Family::Y,
        2,
        45.0,
        2.0,
        -0.13000410546719198329,
        -0.41170647528909328025,
    ),
    (Family::Y, 25, 10.0, 4.0, 176915.38259160976179, 174635.28320941670864),
    (
        Family::Y,
        0,
        0.01,
        0.002,
        -2.9929739813413223623,
        0.12569919675842889793,
    ),
    (
        Family::Y,
        30,
        40.0,
        1.0,
        -0.14146974755129561375,
        -0.071071498652905585044,
    ),
    (Family::I, 0, 1.0, 0.0, 1.2660658777520083356, 0.0),
    (Family::I, 1, 1.0, 0.0, 0.56515910399248502721, 0.0),
    (Family::I, 3, 2.0, 0.5, 0.15092507358454654255, 0.17335761477064391962),
    (Family::I, 0, 0.3, 0.1, 1.0200435966497140535, 0.015150406614531590742),
    (Family::I, 2, 5.0, 3.0, -17.919208038471510263, 4.0159422363634506464),
    (Family::I, 5, 8.0, -2.0, -58.010849743571773115, -71.608628744106267249),
    (Family::I, 1, 14.9, 0.2, 292261.78055153007045, 57315.243762349970962),
    (Family::I, 0, 15.1, 1.0, 212364.53158362177524, 307469.52572445478388),
    (Family::I, 4, 20.0, 5.0, 7551241.0929236301293, -28213318.785594480892),
    (Family::I, 10, 30.0, -10.0, -101966240544.2568965, 133110305679.48117304),
    (Family::I, 1, 1.2, 9.0, -0.18455092607600321815, 0.42895725414447906204),
    (
        Family::I,
        7,
        3.0,
        0.5,
        0.0015545527930750914042,
        0.0046333376864688241829,
    ),
    (Family::I, 2, 45.0, 2.0, -791611677002550342.33, 1826906734494597733.6),
    (
        Family::I,
        25,
        10.0,
        4.0,
        -1.8455972408926125089e-7,
        -2.0384689916210793629e-7,
    ),
    (
        Family::I,
        0,
        0.01,
        0.002,
        1.000024000119000184,
        0.000010000120000452223432,
    ),
    (Family::I, 30, 40.0, 1.0, 88572216402.522221665, 259527784792.23766478),
    (Family::K, 0, 1.0, 0.0, 0.42102443824070833334, 0.0),
    (Family::K, 1, 1.0, 0.0, 0.60190723019723457474, 0.0),
    (Family::K, 3, 2.0, 0.5, 0.35835534757397529608, -0.48251070762974115614),
    (Family::K, 0, 0.3, 0.1, 1.317563785564197815, -0.29377488736632001952),
    (
        Family::K,
        2,
        5.0,
        3.0,
        -0.0043807598980010391175,
        0.0012202619125381660259,
    ),
    (
        Family::K,
        5,
        8.0,
        -2.0,
        -0.00043147776856318004794,
        0.00037120881107944046615,
    ),
    (
        Family::K,
        1,
        14.9,
        0.2,
        1.1006942150670709318e-7,
        -2.3118681840466087947e-8,
    ),
    (
        Family::K,
        0,
        15.1,
        1.0,
        4.5350747815755099056e-8,
        -7.5958459135721171753e-8,
    ),
    (
        Family::K,
        4,
        20.0,
        5.0,
        3.9029817133399509401e-10,
        7.1783476784064165059e-10,
    ),
    (
        Family::K,
        10,
        30.0,
        -10.0,
        -3.1913973215072092942e-14,
        -8.48718222586338691e-14,
    ),
    (Family::K, 1, 1.2, 9.0, -0.11922981780032412547, 0.041440196125080069774),
    (Family::K, 7, 3.0, 0.5, 3.9405424229169623698, -12.848274785467270079),
    (
        Family::K,
        2,
        45.0,
        2.0,
        -2.4388583230715467307e-21,
        -5.007599649715594517e-21,
    ),
    (Family::K, 25, 10.0, 4.0, -42776.202325331136624, 52944.611248585106341),
    (
        Family::K,
        0,
        0.01,
        0.002,
        4.7016301555794095523,
        -0.19734328170917464821,
    ),
    (
        Family::K,
        30,
        40.0,
        1.0,
        1.1223720965072544607e-14,
        -3.4692989037749689666e-14,
    ),
];
