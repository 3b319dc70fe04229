import pytest

from lemniscatic.ivp_series import default_pair
from lemniscatic.weierstrass import default_context

# Reference values frozen from mpmath at 30 digits (Jacobi sn/dn with m = 1/2,
# wp = -1/2 + 1/sn^2, and mpmath.odefun along rays for s, c).
OMEGA_REF = 1.8540746773013719184
AGM_1_SQRT2_REF = 1.1981402347355922074
S_C_REF = {
    0.1: (0.0999985000395822059630, 0.999975000562484479622),
    0.5: (0.495388460063417514146, 0.984591005455247264921),
    1.0: (0.880879585008208520857, 0.794226567592293178799),
    1.2: (0.9560378063910032, 0.6369423168053481),
    0.3 + 0.4j: (0.300317775128023 + 0.404742825114044j, 1.013267173953674 + 0.008603015840733128j),
    -0.5 + 0.2j: (-0.5020669806501392 + 0.19353843266571927j, 0.9985806133464081 + 0.020952171205070702j),
    0.8 + 0.8j: (1.160503569385487 + 1.160503569385487j, 1.6950446251268154 + 0j),
}
WP_REF = {
    0.6: 2.79581669657511529994,
    1.1: 0.888439389135122110047,
    0.5 + 0.2j: 2.50751405554055139162 - 2.36810590895617173727j,
    0.3 + 1.1j: -0.7186516192915706 - 0.3556915601276538j,
    -1.4 + 0.7j: 0.30690820609036684 + 0.22477503389172193j,
    2.5 - 3.1j: 0.37528362346330446 + 0.3639841842385445j,
}
SD_REF = {
    0.2: 0.199992000266657641331,
    0.5 + 0.3j: 0.5015256047044503 + 0.29927898132230996j,
    -1.2 + 2.0j: 0.6406236874505402 + 2.9246754120933565j,
    3.0 + 0.5j: 0.7204653825233002 - 0.499072625297836j,
}
SL_REF = {
    0.4: 0.398978179811527452914,
    0.7 + 0.2j: 0.6959782648923645 + 0.1801676311398396j,
}


@pytest.fixture(scope="session")
def ctx():
    return default_context()


@pytest.fixture(scope="session")
def tp():
    return default_pair()
