import numpy as np
import pytest

from matris.channel import C_LIGHT, SystemParams

# Nominal 1.5 cm wavelength used throughout the checks (20 GHz band).
LAM = 0.015


@pytest.fixture
def params15():
    """Unit-gain params with an exact 0.015 m wavelength, user at 50 m."""
    return SystemParams(
        carrier_frequency=C_LIGHT / LAM,
        user_position=np.array([0.0, 0.0, 50.0]),
    )
