"""Frozen quadrangulation counts used by the cross-check suites.

Each table maps boundary lengths to the counts for Q = 0..8 internal
quadrangles.  The rows were recomputed independently of the recursion
code (closed forms where available, direct half-edge enumeration for
small cells) and are deliberately stored as literals so that a
regression in the series pipeline cannot silently refresh them.

The (8,2) ordinary cylinder row equals 112 c^10 identically; every
entry here was regenerated from that closed form.  The Q = 8 entry of
the length-6 disk row is pinned by the marked-quadrangle identity
4 dF_6/dt = F_(6,4): it must equal 4175945280 / 32 = 130498290.

The genus-1 ordinary rows obey the closed form
F_(2m+2) = (2m+1)!/(6 m!^2) c^(2m) (1 + (m-1) s) / s^2, s = sqrt(1-12t);
the Q = 5 entry of the length-8 row is 34286490 by that formula (checked
against the residue recursion, which agrees on all 63 entries).  Rows 4
and 6 are proportional because c^2 (1 + s) = 2 identically.
"""

Q_MAX = 8

# disks: length -> counts, boundary lengths 2, 4, 6, 8
ORDINARY_DISKS = {
    2: (1, 2, 9, 54, 378, 2916, 24057, 208494, 1876446),
    4: (2, 9, 54, 378, 2916, 24057, 208494, 1876446, 17399772),
    6: (5, 36, 270, 2160, 18225, 160380, 1459458, 13646880, 130498290),
    8: (14, 140, 1260, 11340, 103950, 972972, 9287460, 90221040, 890065260),
}

FULLY_SIMPLE_DISKS = {
    2: (1, 2, 9, 54, 378, 2916, 24057, 208494, 1876446),
    4: (0, 1, 10, 90, 810, 7425, 69498, 663390, 6444360),
    6: (0, 0, 3, 56, 756, 9072, 103194, 1143072, 12492144),
    8: (0, 0, 0, 12, 330, 5940, 89100, 1211760, 15540822),
}

# cylinders, both boundaries ordinary: (l1, l2) -> counts
ORDINARY_CYLINDERS = {
    (1, 1): (1, 3, 18, 135, 1134, 10206, 96228, 938223, 9382230),
    (3, 1): (3, 18, 135, 1134, 10206, 96228, 938223, 9382230, 95698746),
    (5, 1): (10, 90, 810, 7560, 72900, 721710, 7297290, 75057840, 782989740),
    (7, 1): (35, 420, 4410, 45360, 467775, 4864860, 51081030, 541326240, 5785424190),
    (9, 1): (126, 1890, 22680, 255150, 2806650, 30648618, 334348560, 3653952120, 40052936700),
    (2, 2): (2, 12, 90, 756, 6804, 64152, 625482, 6254820, 63799164),
    (4, 2): (8, 72, 648, 6048, 58320, 577368, 5837832, 60046272, 626391792),
    (6, 2): (30, 360, 3780, 38880, 400950, 4169880, 43783740, 463993920, 4958935020),
    (8, 2): (112, 1680, 20160, 226800, 2494800, 27243216, 297198720, 3247957440, 35602610400),
    (3, 3): (12, 108, 972, 9072, 87480, 866052, 8756748, 90069408, 939587688),
    (5, 3): (45, 540, 5670, 58320, 601425, 6254820, 65675610, 695990880, 7438402530),
    (7, 3): (168, 2520, 30240, 340200, 3742200, 40864824, 445798080, 4871936160, 53403915600),
    (9, 3): (630, 11340, 153090, 1871100, 21891870, 250761420, 2841962760, 32042349360, 360476430300),
    (4, 4): (36, 432, 4536, 46656, 481140, 5003856, 52540488, 556792704, 5950722024),
    (6, 4): (144, 2160, 25920, 291600, 3207600, 35026992, 382112640, 4175945280, 45774784800),
    (8, 4): (560, 10080, 136080, 1663200, 19459440, 222899040, 2526189120, 28482088320, 320423493600),
}

# first boundary simple of length k, second ordinary of length l: (k, l) -> counts
MIXED_CYLINDERS = {
    (1, 1): (1, 3, 18, 135, 1134, 10206, 96228, 938223, 9382230),
    (3, 1): (0, 3, 36, 378, 3888, 40095, 416988, 4378374, 46399392),
    (5, 1): (0, 0, 15, 315, 4725, 62370, 773955, 9287460, 109306260),
    (7, 1): (0, 0, 0, 84, 2520, 49140, 793800, 11566800, 158233824),
    (9, 1): (0, 0, 0, 0, 495, 19305, 463320, 8860995, 148551975),
    (2, 2): (2, 12, 90, 756, 6804, 64152, 625482, 6254820, 63799164),
    (4, 2): (0, 8, 120, 1440, 16200, 178200, 1945944, 21228480, 231996960),
    (6, 2): (0, 0, 42, 1008, 16632, 235872, 3095820, 38864448, 474701472),
    (8, 2): (0, 0, 0, 240, 7920, 166320, 2851200, 43623360, 621632880),
    (1, 3): (3, 18, 135, 1134, 10206, 96228, 938223, 9382230, 95698746),
    (3, 3): (3, 36, 378, 3888, 40095, 416988, 4378374, 46399392, 495893502),
    (5, 3): (0, 15, 315, 4725, 62370, 773955, 9287460, 109306260, 1271521800),
    (7, 3): (0, 0, 84, 2520, 49140, 793800, 11566800, 158233824, 2076818940),
    (9, 3): (0, 0, 0, 495, 19305, 463320, 8860995, 148551975, 2287700415),
    (2, 4): (8, 72, 648, 6048, 58320, 577368, 5837832, 60046272, 626391792),
    (4, 4): (4, 80, 1080, 12960, 148500, 1667952, 18574920, 206219520, 2288739240),
    (6, 4): (0, 24, 672, 12096, 181440, 2476656, 32006016, 399748608, 4882643712),
    (8, 4): (0, 0, 144, 5280, 118800, 2138400, 33929280, 497306304, 6911094960),
}

# both boundaries simple: (k1, k2) -> counts
SIMPLE_CYLINDERS = {
    (1, 1): (1, 3, 18, 135, 1134, 10206, 96228, 938223, 9382230),
    (1, 3): (0, 3, 36, 378, 3888, 40095, 416988, 4378374, 46399392),
    (1, 5): (0, 0, 15, 315, 4725, 62370, 773955, 9287460, 109306260),
    (1, 7): (0, 0, 0, 84, 2520, 49140, 793800, 11566800, 158233824),
    (1, 9): (0, 0, 0, 0, 495, 19305, 463320, 8860995, 148551975),
    (2, 2): (2, 12, 90, 756, 6804, 64152, 625482, 6254820, 63799164),
    (2, 4): (0, 8, 120, 1440, 16200, 178200, 1945944, 21228480, 231996960),
    (2, 6): (0, 0, 42, 1008, 16632, 235872, 3095820, 38864448, 474701472),
    (2, 8): (0, 0, 0, 240, 7920, 166320, 2851200, 43623360, 621632880),
    (3, 3): (3, 27, 252, 2457, 24705, 253935, 2653560, 28089828, 300480678),
    (3, 5): (0, 15, 270, 3690, 45900, 547560, 6395760, 73862280, 847681200),
    (3, 7): (0, 0, 84, 2268, 41076, 628992, 8808912, 116940348, 1499730876),
    (3, 9): (0, 0, 0, 495, 17820, 402435, 7341840, 118587645, 1772680140),
    (4, 4): (4, 48, 536, 5952, 66132, 735696, 8196552, 91476864, 1022868648),
    (4, 6): (0, 24, 504, 7728, 105336, 1354752, 16855776, 205426368, 2469577896),
    (4, 8): (0, 0, 144, 4320, 85200, 1401120, 20856960, 291942144, 3922233840),
}

# both boundaries fully simple: (k1, k2) -> counts
FULLY_SIMPLE_CYLINDERS = {
    (1, 1): (0, 1, 9, 81, 756, 7290, 72171, 729729, 7505784),
    (1, 3): (0, 0, 6, 108, 1458, 17820, 208494, 2388204, 27066312),
    (1, 5): (0, 0, 0, 35, 945, 17010, 257985, 3572100, 46845540),
    (1, 7): (0, 0, 0, 0, 210, 7560, 170100, 3084480, 49448070),
    (1, 9): (0, 0, 0, 0, 0, 1287, 57915, 1563705, 33011550),
    (2, 2): (0, 0, 6, 108, 1458, 17820, 208494, 2388204, 27066312),
    (2, 4): (0, 0, 0, 40, 1080, 19440, 294840, 4082400, 53537760),
    (2, 6): (0, 0, 0, 0, 252, 9072, 204120, 3701376, 59337684),
    (2, 8): (0, 0, 0, 0, 0, 1584, 71280, 1924560, 40629600),
    (3, 3): (0, 0, 0, 48, 1296, 23328, 353808, 4898880, 64245312),
    (3, 5): (0, 0, 0, 0, 315, 11340, 255150, 4626720, 74172105),
    (3, 7): (0, 0, 0, 0, 0, 2016, 90720, 2449440, 51710400),
    (3, 9): (0, 0, 0, 0, 0, 0, 12870, 694980, 21891870),
    (4, 4): (0, 0, 0, 0, 300, 10800, 243000, 4406400, 70640100),
    (4, 6): (0, 0, 0, 0, 0, 2016, 90720, 2449440, 51710400),
    (4, 8): (0, 0, 0, 0, 0, 0, 13200, 712800, 22453200),
}

# genus-1, one ordinary boundary: length -> counts
ORDINARY_TORI = {
    2: (0, 1, 15, 198, 2511, 31266, 385398, 4721004, 57590271),
    4: (1, 15, 198, 2511, 31266, 385398, 4721004, 57590271, 700465482),
    6: (10, 150, 1980, 25110, 312660, 3853980, 47210040, 575902710, 7004654820),
    8: (70, 1190, 16590, 216720, 2748060, 34286490, 423600030, 5199957000, 63549802260),
    10: (420, 8190, 122850, 1678320, 21925890, 279389250, 3505914090, 43551655560, 537235675200),
    12: (2310, 51282, 831600, 11962566, 162074682, 2121490602, 27174209832, 343061095608, 4287091638060),
    14: (12012, 300300, 5261256, 79891812, 1126377252, 15198795612, 199385314128, 2565902298960, 32572738238040),
}

# genus-1, one fully simple boundary: length -> counts
FULLY_SIMPLE_TORI = {
    2: (0, 0, 6, 117, 1755, 23976, 313227, 3991275, 50084487),
    4: (0, 0, 0, 105, 2925, 55215, 885330, 13009005, 181316880),
    6: (0, 0, 0, 0, 1260, 46116, 1065960, 19983348, 332470656),
    8: (0, 0, 0, 0, 0, 12870, 585090, 16073640, 346928670),
    10: (0, 0, 0, 0, 0, 0, 120120, 6531525, 208243035),
    12: (0, 0, 0, 0, 0, 0, 0, 1058148, 66997476),
    14: (0, 0, 0, 0, 0, 0, 0, 0, 8953560),
}
