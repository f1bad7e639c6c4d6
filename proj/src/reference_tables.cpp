#include "cenreg/walk_coefficients.hpp"

namespace cenreg::detail {

// g_r(t), r = 1..t, for t = 1..20.
const std::vector<std::vector<std::int64_t>>& reference_g_rows() {
    static const std::vector<std::vector<std::int64_t>> rows = {
        {1},
        {-1, 1},
        {2, -2, 1},
        {-5, 4, -3, 1},
        {12, -8, 7, -4, 1},
        {-20, 8, -14, 11, -5, 1},
        {-12, 42, 10, -24, 16, -6, 1},
        {295, -340, 96, 22, -39, 22, -7, 1},
        {-1584, 1510, -655, 142, 48, -60, 29, -8, 1},
        {5623, -4712, 2552, -1043, 176, 94, -88, 37, -9, 1},
        {-12530, 8408, -6190, 4078, -1558, 178, 167, -124, 46, -10, 1},
        {-1806, 13088, 1068, -9444, 6542, -2170, 122, 275, -169, 56, -11, 1},
        {186702, -194318, 83832, -2150, -16554, 10028, -2836, -26, 427, -224, 67, -12, 1},
        {-1101323, 981200, -530446, 151068, 4548, -28178, 14700, -3480, -309, 633, -290, 79, -13, 1},
        {3938488, -3101066, 2005368, -879116, 213314, 22194, -46038, 20662, -3984, -780, 904, -368, 92, -14, 1},
        {-7533897, 4292162, -4310942, 3034670, -1337608, 281946, 58866, -72062, 27916, -4178, -1503, 1252, -459, 106, -15, 1},
        {-13585642, 20354680, -4074647, -4907736, 4785512, -2019280, 333648, 124800, -108304, 36312, -3829, -2554, 1690, -564, 121, -16, 1},
        {198008994, -188470026, 91205574, -17574745, -8228118, 7855844, -2899960, 337020, 232853, -156828, 45486, -2629, -4022, 2232, -684, 137, -17, 1},
        {-999517964, 832916330, -496007668, 186419358, -25081260, -16309132, 12404253, -3955392, 246742, 398862, -219512, 54786, -182, -6010, 2893, -820, 154, -18, 1},
        {3021609795, -2145039932, 1614224856, -871382472, 283591630, -23702626, -30152117, 18806973, -5122509, -1830, 641615, -297780, 63185, 4010, -8636, 3689, -973, 172, -19, 1},
    };
    return rows;
}

// b_T(t, delta^s): rows t = 1..2T-1, columns s = 2..2T.
const std::vector<std::vector<std::vector<std::int64_t>>>& reference_b_rows() {
    static const std::vector<std::vector<std::vector<std::int64_t>>> tables = {
        {
            {1},
        },
        {
            {1, -3, 3},
            {0, 3, -2},
            {0, 0, 2},
        },
        {
            {1, -3, 7, -4, -8},
            {0, 3, -4, 0, 10},
            {0, 0, 5, -2, -2},
            {0, 0, 0, 4, -1},
            {0, 0, 0, 0, 2},
        },
        {
            {1, -3, 7, -13, -15, 91, -182},
            {0, 3, -4, 5, 24, -94, 160},
            {0, 0, 5, -7, -1, 36, -84},
            {0, 0, 0, 8, -6, -2, 27},
            {0, 0, 0, 0, 7, -5, 0},
            {0, 0, 0, 0, 0, 5, -4},
            {0, 0, 0, 0, 0, 0, 3},
        },
        {
            {1, -3, 7, -13, -4, 161, -500, 952, -654},
            {0, 3, -4, 5, 24, -178, 450, -740, 314},
            {0, 0, 5, -7, 11, 57, -222, 456, -362},
            {0, 0, 0, 8, -15, 6, 66, -225, 317},
            {0, 0, 0, 0, 12, -14, 4, 59, -148},
            {0, 0, 0, 0, 0, 11, -13, 6, 32},
            {0, 0, 0, 0, 0, 0, 9, -12, 6},
            {0, 0, 0, 0, 0, 0, 0, 7, -8},
            {0, 0, 0, 0, 0, 0, 0, 0, 4},
        },
        {
            {1, -3, 7, -13, -4, 184, -819, 1869, -1935, -3737, 15981},
            {0, 3, -4, 5, 24, -229, 770, -1496, 954, 4740, -14604},
            {0, 0, 5, -7, 11, 52, -346, 869, -1053, -1526, 7728},
            {0, 0, 0, 8, -15, 28, 81, -406, 915, -674, -1883},
            {0, 0, 0, 0, 12, -28, 22, 99, -432, 814, -312},
            {0, 0, 0, 0, 0, 17, -27, 19, 94, -359, 485},
            {0, 0, 0, 0, 0, 0, 16, -26, 21, 67, -209},
            {0, 0, 0, 0, 0, 0, 0, 14, -25, 21, 35},
            {0, 0, 0, 0, 0, 0, 0, 0, 12, -21, 15},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 9, -13},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5},
        },
        {
            {1, -3, 7, -13, -4, 184, -1097, 3043, -3843, -6915, 49578, -115459, 80767},
            {0, 3, -4, 5, 24, -229, 1088, -2552, 2198, 9142, -45912, 90964, -37634},
            {0, 0, 5, -7, 11, 52, -431, 1363, -2000, -2751, 23692, -59966, 51305},
            {0, 0, 0, 8, -15, 28, 63, -565, 1565, -1556, -5348, 25674, -39288},
            {0, 0, 0, 0, 12, -28, 59, 102, -692, 1717, -1266, -5929, 18469},
            {0, 0, 0, 0, 0, 17, -47, 52, 130, -739, 1625, -718, -4616},
            {0, 0, 0, 0, 0, 0, 23, -46, 48, 127, -669, 1263, -272},
            {0, 0, 0, 0, 0, 0, 0, 22, -45, 50, 100, -516, 758},
            {0, 0, 0, 0, 0, 0, 0, 0, 20, -44, 50, 68, -306},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 18, -40, 44, 33},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 15, -32, 29},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 11, -19},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 6},
        },
        {
            {1, -3, 7, -13, -4, 184, -1097, 4525, -7293, -6944, 83485, -256225, 310955, 520469, -2445004},
            {0, 3, -4, 5, 24, -229, 1088, -3969, 4898, 11110, -79100, 207636, -174066, -652454, 2204430},
            {0, 0, 5, -7, 11, 52, -431, 1963, -3592, -2432, 39251, -130367, 185191, 177779, -1142919},
            {0, 0, 0, 8, -15, 28, 63, -696, 2366, -3194, -7525, 52268, -127455, 81923, 320735},
            {0, 0, 0, 0, 12, -28, 59, 58, -912, 2822, -3094, -10153, 55373, -107794, 30033},
            {0, 0, 0, 0, 0, 17, -47, 110, 108, -1096, 3070, -2701, -12050, 51958, -73965},
            {0, 0, 0, 0, 0, 0, 23, -73, 102, 146, -1166, 2990, -1896, -11737, 35122},
            {0, 0, 0, 0, 0, 0, 0, 30, -72, 97, 145, -1099, 2591, -1255, -7492},
            {0, 0, 0, 0, 0, 0, 0, 0, 29, -71, 99, 118, -943, 2064, -940},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 27, -70, 99, 86, -732, 1305},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 25, -66, 93, 51, -426},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 22, -58, 78, 18},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 18, -45, 49},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 13, -26},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 7},
        },
        {
            {1, -3, 7, -13, -4, 184, -1097, 4525, -12637, -1360, 110968, -420423, 695532, 681922, -7068240, 17664266, -13712687},
            {0, 3, -4, 5, 24, -229, 1088, -3969, 9368, 8424, -109118, 350830, -448472, -1023716, 6464948, -13721396, 6724528},
            {0, 0, 5, -7, 11, 52, -431, 1963, -6002, 474, 51064, -209648, 389396, 179724, -3281313, 9018463, -8293240},
            {0, 0, 0, 8, -15, 28, 63, -696, 3367, -5914, -6669, 77446, -236871, 246153, 850584, -4132503, 6454139},
            {0, 0, 0, 0, 12, -28, 59, 58, -1079, 4123, -6290, -11274, 91953, -236476, 139244, 993350, -2918136},
            {0, 0, 0, 0, 0, 17, -47, 110, 18, -1366, 4803, -6352, -15294, 101721, -231751, 105547, 672714},
            {0, 0, 0, 0, 0, 0, 23, -73, 188, 79, -1614, 5172, -5880, -18707, 102925, -204469, 74412},
            {0, 0, 0, 0, 0, 0, 0, 30, -107, 179, 128, -1709, 5108, -4789, -19615, 88499, -132335},
            {0, 0, 0, 0, 0, 0, 0, 0, 38, -106, 173, 129, -1645, 4670, -3937, -15825, 53896},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 37, -105, 175, 102, -1486, 4121, -3585, -8366},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 35, -104, 175, 70, -1274, 3362, -2653},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 33, -100, 169, 35, -968, 2058},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 30, -92, 154, 2, -542},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 26, -79, 125, -16},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 21, -60, 76},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 15, -34},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8},
        },
        {
            {1, -3, 7, -13, -4, 184, -1097, 4525, -12637, 10890, 125858, -597596, 1235468, 309432, -11044097, 36311072, -45046667, -75501514, 347810028},
            {0, 3, -4, 5, 24, -229, 1088, -3969, 9368, 211, -130730, 514002, -866532, -979926, 10410814, -28739014, 23733098, 95980642, -310601986},
            {0, 0, 5, -7, 11, 52, -431, 1963, -6002, 6504, 56591, -292720, 663931, -81390, -5051600, 18395415, -26721605, -26472010, 165085728},
            {0, 0, 0, 8, -15, 28, 63, -696, 3367, -9914, -1678, 97369, -363531, 535304, 1071910, -8050856, 19840070, -13232554, -47818679},
            {0, 0, 0, 0, 12, -28, 59, 58, -1079, 5644, -11058, -7738, 125398, -398107, 394043, 1745080, -8688965, 16108742, -2368523},
            {0, 0, 0, 0, 0, 17, -47, 110, 18, -1535, 6719, -11878, -13503, 148861, -422298, 318022, 1897993, -7599134, 9772214},
            {0, 0, 0, 0, 0, 0, 23, -73, 188, -84, -1901, 7684, -12237, -18749, 165197, -429048, 278089, 1667351, -4861956},
            {0, 0, 0, 0, 0, 0, 0, 30, -107, 301, -11, -2225, 8199, -11710, -23857, 171609, -407905, 236540, 1042204},
            {0, 0, 0, 0, 0, 0, 0, 0, 38, -150, 291, 50, -2347, 8154, -10298, -26127, 159555, -335522, 149307},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 47, -149, 284, 53, -2286, 7674, -9217, -22752, 124908, -199857},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 46, -148, 286, 26, -2124, 7102, -8832, -15237, 70335},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 44, -147, 286, -6, -1911, 6343, -7913, -6786},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 42, -143, 280, -41, -1605, 5040, -5264},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 39, -135, 265, -74, -1179, 2982},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 35, -122, 236, -92, -637},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 30, -103, 187, -76},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 24, -77, 111},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 17, -43},
            {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 9},
        },
    };
    return tables;
}

}  // namespace cenreg::detail
