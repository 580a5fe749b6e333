//! Precomputed quadrature tables.
//!
//! Generalized Gauss-Laguerre rules (60 nodes) for the weights
//! t^(-1/2) e^(-t) and t^(1/2) e^(-t) on [0, inf), used by the
//! Laplace-integral branch of the Hankel evaluators. Nodes refined to
//! 50 significant digits by Newton iteration on L_n^(a); weights from
//! the derivative formula. Rule moments match Gamma(q+a+1) to 1e-49.

pub(crate) const LAGUERRE_M_NODES: [f64; 60] = [
    0.01023823568248335009,
    0.09215456234770512286,
    0.2560429455211986735,
    0.5020150536908234106,
    0.8302389134841728728,
    1.240939543670921884,
    1.734399809473427331,
    2.310961505070685481,
    2.971026674399320571,
    3.715059182748415357,
    4.543586554257801033,
    5.457202093313228240,
    6.456567311045828383,
    7.542414681756464580,
    8.715550758179228106,
    9.976859679168936945,
    11.32730710876041928,
    12.76794465174151823,
    14.29991479807537404,
    15.92445645690557813,
    17.64291115073132136,
    19.45672995195794511,
    21.36748125779440332,
    23.37685951586016900,
    25.48669503247774304,
    27.69896501921629374,
    30.01580606177199173,
    32.43952822993985888,
    34.97263108981589993,
    37.61782193149241265,
    40.37803659001399690,
    43.25646331771601834,
    46.25657026686757754,
    49.38213726893199639,
    52.63729275903198681,
    56.02655690266920057,
    59.55489225197907833,
    63.22776361252503323,
    67.05120926952037244,
    71.03192634830004950,
    75.17737393157557190,
    79.49589871951209667,
    83.99688963908720814,
    88.69097010239551985,
    93.59023991670588271,
    98.70858370098358797,
    104.0620699476607537,
    109.6694760749584565,
    115.5529925402545908,
    121.7391880198216821,
    128.2603666425344582,
    135.1565347719079764,
    142.4783554464081224,
    150.2917852714411640,
    158.6857607338519042,
    167.7858666141318883,
    177.7810376064506553,
    188.9831553922848943,
    201.9906846010410350,
    218.3496119790856718,
];

pub(crate) const LAGUERRE_M_WEIGHTS: [f64; 60] = [
    0.4006196925237585913,
    0.3691733191426394126,
    0.3134745260535610296,
    0.2452448481152634785,
    0.1767464208746427008,
    0.1173159995000869419,
    0.07169643129551631321,
    0.04032959396148355666,
    0.02087192427180533981,
    0.009933746505183892783,
    0.004345579662590917591,
    0.001746264911528683408,
    0.0006441908698086995074,
    0.0002179940521935057744,
    0.00006761639282048058035,
    0.00001920678910329106725,
    4.991555485517316269e-6,
    1.185608391520744944e-6,
    2.570854467930115324e-7,
    5.082877298533026188e-8,
    9.150786751250862559e-9,
    1.497950409043132723e-9,
    2.226125000139365636e-10,
    2.998356937364984509e-11,
    3.653497225403765175e-12,
    4.019504914221531726e-13,
    3.984305759400171443e-14,
    3.550195719466132069e-15,
    2.836567139172014668e-16,
    2.026782273916597778e-17,
    1.291302806317581740e-18,
    7.312756285099783911e-20,
    3.668349283539335896e-21,
    1.623929947210123961e-22,
    6.318171673914458004e-24,
    2.150775597599957521e-25,
    6.374412427210539875e-27,
    1.635959589993967619e-28,
    3.614031443800811477e-30,
    6.826763502088782864e-32,
    1.094538118630656947e-33,
    1.477231847727389070e-35,
    1.662760818164075076e-37,
    1.544566619215880899e-39,
    1.169981712319108375e-41,
    7.128245478769190222e-44,
    3.438099641933570029e-46,
    1.288633208647740260e-48,
    3.671976780583619289e-51,
    7.749011783058835130e-54,
    1.173111508867602549e-56,
    1.224813742750484170e-59,
    8.390715359202578109e-63,
    3.535052901708911023e-66,
    8.394586842561386512e-70,
    9.937360035742004556e-74,
    4.877719055519751895e-78,
    7.334485779851520645e-83,
    1.897604479388801717e-88,
    1.941748063471206311e-95,
];

pub(crate) const LAGUERRE_P_NODES: [f64; 60] = [
    0.04061757509457447065,
    0.1624974699625421629,
    0.3657212934147832849,
    0.6504253945538788524,
    1.016801367532506559,
    1.465096764531385338,
    1.995616023397421161,
    2.608721618404352232,
    3.304835444762481126,
    4.084440449850301609,
    4.948082526713273844,
    5.896372688224333492,
    6.929989543485584636,
    8.049682101639620243,
    9.256272932332985533,
    10.55066171672971422,
    11.93382922832489498,
    13.40684178899575992,
    14.97085625291916944,
    16.62712557938477572,
    18.37700506539401348,
    20.22195932056618590,
    22.16357008065806344,
    24.20354497242066659,
    26.34372736216519917,
    28.58610744404422736,
    30.93283475263121727,
    33.38623231912277347,
    35.94881273296244746,
    38.62329642292300119,
    41.41263253633202192,
    44.32002287566108749,
    47.34894945272861329,
    50.50320634845031098,
    53.78693672872119760,
    57.20467607596162208,
    60.76140296672463831,
    64.46259908031893701,
    68.31432059239414523,
    72.32328373485841139,
    76.49696815323553976,
    80.84374285886762989,
    85.37302119769616475,
    90.09545355611132879,
    95.02316983553382337,
    100.1700885911481301,
    105.5523170321441542,
    111.1886773149563430,
    117.1014123300525116,
    123.3171531896077279,
    129.8682797280622551,
    136.7948920515330067,
    144.1477721929579715,
    151.9930324166738124,
    160.4198206079454766,
    169.5540229031878712,
    179.5850327771743305,
    190.8255001981313489,
    203.8753896668746562,
    220.2846447728127982,
];

pub(crate) const LAGUERRE_P_WEIGHTS: [f64; 60] = [
    0.01572118195501515181,
    0.05569227953801815802,
    0.1023343525529970554,
    0.1369866376189698163,
    0.1485697138024188983,
    0.1368582237970355467,
    0.1097886499160940400,
    0.07783822406641150031,
    0.04922960142962107610,
    0.02794719899892506781,
    0.01430059172812049775,
    0.006615025493287618658,
    0.002771620268122717609,
    0.001053260813011558722,
    0.0003633252629645902783,
    0.0001138148704938780962,
    0.00003238120646838160637,
    8.365792969265509961e-6,
    1.961862834003622265e-6,
    4.173625295581841543e-7,
    8.048093460163264297e-8,
    1.405331822828491435e-8,
    2.219551656160021583e-9,
    3.166429247691933470e-10,
    4.074112487652066287e-11,
    4.719723524435180274e-12,
    4.913603828018023533e-13,
    4.587514553720406300e-14,
    3.832224341953485573e-15,
    2.857098244383047568e-16,
    1.895829232557519945e-17,
    1.116238858608740815e-18,
    5.812421507214410010e-20,
    2.666971553122724609e-21,
    1.074004533427894142e-22,
    3.779316691546123027e-24,
    1.156483566637366017e-25,
    3.061015491917807726e-27,
    6.966641580155178763e-29,
    1.354441192376814808e-30,
    2.233024333354492728e-32,
    3.096411936866798804e-34,
    3.578021548933589998e-36,
    3.409594583188501944e-38,
    2.647654421184953700e-40,
    1.652635101281320486e-42,
    8.161562705958262441e-45,
    3.130514041401196147e-47,
    9.124553497738954671e-50,
    1.968798095184030403e-52,
    3.046356503455158410e-55,
    3.249898055098286910e-58,
    2.274369632196784097e-61,
    9.787310081096907879e-65,
    2.373910287027260604e-68,
    2.870728178072556618e-72,
    1.439957191957857913e-76,
    2.214260778094756709e-81,
    5.866953708741729398e-87,
    6.168522149589802650e-94,
];
