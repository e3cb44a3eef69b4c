# -*- coding: utf-8 -*-
"""
运行配置

默认值写在模块级字典中，可由环境变量覆盖。
"""

import os

# 数值容差
GRAZING_TOL = 1e-12
CLOSURE_EPS = 1e-6
TIE_RTOL = 1e-12
BOUNDARY_TOL = 1e-10

DEFAULT_SEED = 20240601

# 报告归档数据库连接参数 (psycopg3 使用 dbname)
ARCHIVE_DEFAULTS = {
    'host': 'localhost',
    'port': '5432',
    'user': 'postgres',
    'password': 'postgres',  # 请根据实际情况修改密码
    'dbname': 'billiards',
    'client_encoding': 'utf8'
}

_ARCHIVE_ENV = {
    'host': 'BILLIARDS_PGHOST',
    'port': 'BILLIARDS_PGPORT',
    'user': 'BILLIARDS_PGUSER',
    'password': 'BILLIARDS_PGPASSWORD',
    'dbname': 'BILLIARDS_PGDATABASE',
}


def output_dir():
    """
    默认输出目录

    Returns:
        str: BILLIARDS_OUTPUT_DIR 环境变量的值，未设置时为当前目录下的 output
    """
    return os.environ.get('BILLIARDS_OUTPUT_DIR', os.path.join(os.getcwd(), 'output'))


def log_level():
    return os.environ.get('BILLIARDS_LOG_LEVEL', 'WARNING').upper()


def default_seed():
    """
    默认随机种子

    Returns:
        int: BILLIARDS_SEED 或内置默认值
    """
    value = os.environ.get('BILLIARDS_SEED')
    if value is None:
        return DEFAULT_SEED
    return int(value)


def archive_params():
    """
    归档数据库连接参数

    Returns:
        dict: 可直接传给 psycopg.connect 的参数
    """
    params = dict(ARCHIVE_DEFAULTS)
    for key, env_name in _ARCHIVE_ENV.items():
        if env_name in os.environ:
            params[key] = os.environ[env_name]
    return params
