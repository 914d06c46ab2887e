import math

import pytest
from scipy import constants as sc

TWO_PI = 2.0 * math.pi


@pytest.fixture
def transmon50():
    """Charging and Josephson energies (joule) with EJ/EC = 50, EC/h = 250 MHz."""
    EC = sc.h * 250e6
    return EC, 50.0 * EC
