'''
Parameter pairs of the reproduced tables and their published values.

TABLE1 rows are (p, q, curvature, radius of curvature); TABLE2 and TABLE3
rows are (p, q, rho_opt, ball volume, prism volume, density).
'''

TABLE1 = [
    (3, 7, 0.286926, 3.485219),
    (3, 8, 0.371579, 2.691215),
    (3, 10, 0.453885, 2.203203),
    (3, 1000, 0.577339, 1.732085),
]

TABLE2 = [
    (3, 7, 0.141564, 0.011963, 0.031767, 0.376592),
    (3, 8, 0.181760, 0.025431, 0.071377, 0.356287),
    (3, 10, 0.219795, 0.045198, 0.138101, 0.327281),
    (3, 1000, 0.274648, 0.088981, 0.428828, 0.207499),
    (4, 5, 0.265319, 0.080085, 0.166705, 0.480397),
    (4, 6, 0.329239, 0.154965, 0.344779, 0.449464),
    (4, 10, 0.404230, 0.292043, 0.761956, 0.383280),
    (4, 1000, 0.440683, 0.382228, 1.378910, 0.277196),
    (5, 4, 0.313435, 0.133256, 0.246171, 0.541312),
    (5, 5, 0.421241, 0.332010, 0.661684, 0.501765),
    (5, 10, 0.530638, 0.686600, 1.667047, 0.411866),
    (5, 1000, 0.562086, 0.825191, 2.639937, 0.312580),
    (6, 4, 0.440687, 0.382237, 0.692229, 0.552183),
    (6, 5, 0.530638, 0.686600, 1.333638, 0.514833),
    (6, 10, 0.629251, 1.188024, 2.767592, 0.429263),
    (6, 1000, 0.658476, 1.377893, 4.124915, 0.334042),
    (7, 3, 0.272637, 0.087010, 0.142753, 0.609513),
    (7, 4, 0.535202, 0.705586, 1.261041, 0.559527),
    (7, 5, 0.617496, 1.117400, 2.133913, 0.523639),
    (7, 10, 0.710652, 1.772033, 4.018646, 0.440953),
    (7, 1000, 0.738668, 2.015812, 5.785244, 0.348440),
    (8, 3, 0.382143, 0.245334, 0.400179, 0.613062),
    (8, 4, 0.612113, 1.086117, 1.923010, 0.564800),
    (8, 5, 0.690221, 1.608804, 3.035751, 0.529953),
    (8, 10, 0.780165, 2.422804, 5.392115, 0.449324),
    (8, 1000, 0.807443, 2.722797, 7.589676, 0.358750),
]

TABLE3 = [
    (10, 3, 0.530638, 0.686600, 1.111365, 0.617799),
    (20, 3, 0.914848, 4.195479, 6.706186, 0.625613),
    (20, 4, 1.094612, 8.023914, 13.755306, 0.583332),
    (20, 5, 1.163424, 10.092704, 18.275027, 0.552268),
    (20, 10, 1.245625, 13.132701, 27.392724, 0.479423),
    (20, 1000, 1.271043, 14.216772, 35.858024, 0.396474),
    (28, 3, 1.088398, 7.855861, 12.537440, 0.626592),
    (29, 3, 1.106311, 8.348310, 13.323054, 0.626606),
    (30, 3, 1.123593, 8.847342, 14.119487, 0.626605),
    (35, 3, 1.201914, 11.432334, 18.250297, 0.626419),
    (40, 3, 1.269482, 14.148085, 22.599777, 0.626028),
    (52, 3, 1.401728, 21.089811, 33.761388, 0.624673),
    (72, 3, 1.565173, 33.642710, 54.088487, 0.621994),
]

TABLES = dict(table1=TABLE1, table2=TABLE2, table3=TABLE3)

# window of the density maximum search at q = 3
PEAK_Q = 3
PEAK_P_RANGE = (7, 72)


def pairs(name):
    return [(row[0], row[1]) for row in TABLES[name]]


def reference(name, p, q):
    '''
    Published values for (p, q) in the named table, or None.
    '''
    for row in TABLES[name]:
        if row[:2] == (p, q):
            return row[2:]
    return None
