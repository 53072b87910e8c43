"""Reference values frozen from tests/generate_oracles.py (mpmath, 40 digits)."""

STOLARSKY = {(0.5, 3.0, 2.0, 1.0): 1.5131744164863445, (0.5, 3.0, 7.0, 0.3): 3.75075674021176, (-1.0, 2.0, 2.0, 1.0): 1.4422495703074083, (-1.0, 2.0, 7.0, 0.3): 1.9716843368468675, (2.0, 2.0, 2.0, 1.0): 1.5283614911571424, (2.0, 2.0, 7.0, 0.3): 4.2703948527638005, (0.0, 3.0, 2.0, 1.0): 1.4987082848177293, (0.0, 3.0, 7.0, 0.3): 3.31091542491004, (1.0, 2.0, 2.0, 1.0): 1.5, (1.0, 2.0, 7.0, 0.3): 3.65, (-2.0, -1.0, 2.0, 1.0): 1.3333333333333333, (-2.0, -1.0, 7.0, 0.3): 0.5753424657534246}
LOG_MEAN = {(2.0, 1.0): 1.4426950408889634, (1.000000001, 1.0): 1.0000000005, (100.0, 0.01): 10.856276311376536}
WEIGHTED_GEOMETRIC_COMPLEX = {(2.0, 1.0, 0.3, (2.0, 3.0)): (3.2827917791041488+3.0145571545686902j), (5.0, 1.0, 0.75, (-0.5, 1.0)): (2.9257774133561725+1.3802197517916217j), (10.0, 0.5, 0.1, (0.0, 1.0)): (0.7449076677660772+1.176622299719626j)}
GN_COMPLEX = {((1.0, 2.0, 4.0), (0.0, 1.0)): (2.0677638280692023+1.1242824414189978j), ((1.0, 2.0, 3.0, 5.0), (-0.5, 2.0)): (2.0117341667953577+2.2287000322981076j)}
F_KERNEL = {(0.5, 1.3): 0.2808339423199941, (0.25, 2.0): 0.2937966047901118, (0.75, 0.5): 0.17036740360887195, (0.1, 10.0): 0.1183122017571874, (0.9, 0.1): 0.0441145145663178}
RHO = {0.1: 0.07473273341191292, 1.0: 0.49141044615420787, 10.0: 0.5151340692254388}
P_KERNEL = {0.1: 0.024911430047698822, 1.0: 0.1641404077346808, 10.0: 0.1892571500000265}
H_DERIV = {(0.5, 1, 0.1): -15.075567228888179, (0.5, 1, 1.0): -0.3535533905932738, (0.5, 1, 10.0): -0.0047673129462279615, (0.5, 3, 0.1): -5868.2579874432495, (0.5, 3, 1.0): -1.6572815184059708, (0.5, 3, 10.0): -0.000273332508797161, (0.5, 6, 0.1): 511268189.56610537, (0.5, 6, 1.0): 154.17379225446044, (0.5, 6, 10.0): 3.0759202914930804e-05, (-0.5, 1, 0.1): 1.3705061117171073, (-0.5, 1, 1.0): 0.1767766952966369, (-0.5, 1, 10.0): 0.004333920860207238, (-0.5, 3, 0.1): 125.72411438066024, (-0.5, 3, 1.0): 0.4308931947855524, (-0.5, 3, 10.0): 0.00022591905641121613, (-0.5, 6, 0.1): -4751933.440903154, (-0.5, 6, 1.0): -18.279297247543354, (-0.5, 6, 10.0): -2.205516028414312e-05}
BIG_H_DERIV = {(0.5, 1, 0.1): -27.410122234342143, (0.5, 1, 1.0): -0.3535533905932738, (0.5, 1, 10.0): -0.0008667841720414476, (0.5, 4, 0.1): 405900.45773019054, (0.5, 4, 1.0): 9.695096882674928, (0.5, 4, 10.0): 4.530957964680033e-05, (0.25, 1, 0.1): -15.050911461470015, (0.25, 1, 1.0): -0.29730177875068026, (0.25, 1, 10.0): -0.0008463749496565663, (0.25, 4, 0.1): 160226.9035231906, (0.25, 4, 1.0): 6.924460374222387, (0.25, 4, 10.0): 4.3196927069668514e-05}
G_PRIME = {(4.0, 1.0, 0.5, 0.0): 1.25, (3.0, 2.0, 0.2, -1.5): 1.0796334810001151, (10.0, 0.5, 0.7, 5.0): 1.123583143561547}
A_MINUS_L_2_1 = 0.05730495911103659
