"""
Конфигурационные настройки для cmslab
"""

import os
import logging
from dotenv import load_dotenv, find_dotenv

# Load environment variables from a .env file if present (helps when running tests)
load_dotenv(find_dotenv())

# Защитные пороги, общие для всех модулей
GUARD_SETTINGS = {
    'pole_eps': 1e-12,       # distance to a singularity treated as a hit
    'max_degree': 64,        # exact polynomials beyond this total degree are rejected
    'max_subset_n': 12,      # principal-minor / subset enumeration bound
    'exp_limit': 700.0,      # log-scale overflow guard for exp(β Σ p)
    'max_ba_order': 12,      # M = mN(N-1)/2 bound for the Baker-Akhiezer construction
}

# Специальные функции
SPECIAL_SETTINGS = {
    'wp_tail_rtol': 1e-17,   # stop adding lattice rows once the geometric tail is below this
    'wp_max_rows': 400,
}

# Настройки интегратора
INTEGRATOR_SETTINGS = {
    'tol': 1e-10,
    'tol_min': 1e-12,
    'tol_max': 1e-4,
    'min_step': 1e-14,
    'initial_step': 1e-3,
    'safety': 0.9,
    'min_factor': 0.2,
    'max_factor': 5.0,
    'max_steps': 2_000_000,
}

# Скобки Пуассона (центральные разности)
BRACKET_SETTINGS = {
    'h': 1e-5,
    'h_min': 1e-7,
    'h_max': 1e-3,
}

# Матрицы Лакса
LAX_SETTINGS = {
    'rs_beta_step': 1e-4,     # β used for the central β-derivative of the RS Lax matrix
    'spectral_gap': 1e-10,    # smaller eigenvalue gaps count as degenerate
    'imag_tol': 1e-12,        # imaginary residue allowed before a "real" value is rejected
}

# Численные оракулы
ORACLE_SETTINGS = {
    'fd_step': 1e-4,
    'min_wall_distance': 0.3,
    'adop_wall_distance': 0.1,
    'adop_cut_eps': 1e-8,     # minimal |π − |arg|| of an f_± radicand before the principal log is refused
}

# Настройки запуска
RUN_SETTINGS = {
    'seed': int(os.getenv('CMSLAB_SEED', '20240101')),
    'N': 4,
    'output_dir': os.getenv('CMSLAB_OUTPUT_DIR', 'reports'),
}

# Настройки логирования
LOGGING_SETTINGS = {
    'level': os.getenv('CMSLAB_LOG_LEVEL', 'INFO'),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'file': 'logs/verification.log',
}


def configure_logging(level: str = None) -> logging.Logger:
    """Sets up root logging and returns the dedicated per-check `verification` logger."""
    logging.basicConfig(level=(level or LOGGING_SETTINGS['level']).upper(),
                        format=LOGGING_SETTINGS['format'])

    # --- Отдельный лог для результатов проверок ------------------------------
    verification_logger = logging.getLogger('verification')
    if not verification_logger.handlers:
        log_dir = os.path.dirname(LOGGING_SETTINGS['file'])
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handler = logging.FileHandler(LOGGING_SETTINGS['file'], encoding='utf-8')
        handler.setFormatter(logging.Formatter('%(asctime)s - %(message)s'))
        verification_logger.addHandler(handler)
    return verification_logger
