"""Baseband waveform lab for conventional OTFS and the time-interleaved
cyclic-shifted P4-coded variant (TICP4-OTFS): modulators, ambiguity
analysis, pulse-compression ranging and LMMSE link simulation."""

from .grid import (
    CRITICAL,
    OVERSAMPLED,
    DDFrame,
    DTFrame,
    GridError,
    GridParams,
    TFFrame,
    TimeSignal,
    frame_energy,
    new_grid,
)
from .transforms import (
    deinterleave_rowcol,
    deserialize_columnwise,
    dft_matrix,
    interleave_rowcol,
    interleaver_matrix,
    isfft,
    ofdm_demodulate_slots,
    ofdm_modulate_slots,
    serialize_columnwise,
    sfft,
)
from .phasecode import apply_code, cyclic_phase_matrix, p4_sequence, remove_code
from .modem import (
    Scheme,
    TxMatrix,
    demodulate,
    modulate,
    otfs_modulate_direct,
    otfs_modulate_ofdm,
    pulse_shape,
    ticp4_modulate,
    tx_matrix,
)
from .ambiguity import (
    AmbiguityCut,
    AmbiguitySurface,
    ambiguity_surface,
    delay_cut,
    doppler_cut,
    mainlobe_region,
    mainlobe_width,
    peak_sidelobe_db,
)
from .channel import (
    ChannelSpec,
    ChannelTap,
    add_awgn,
    apply_channel,
    channel_matrix,
    draw_channel,
    uniform_power_channel,
)
from .receiver import BerPoint, ber_experiment, lmmse_detect, qam4_demap, qam4_map
from .radar import Peak, RangeProfile, detect_peaks, pulse_compress, range_scenario

__version__ = "0.1.0"
