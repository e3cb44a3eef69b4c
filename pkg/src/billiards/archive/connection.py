# -*- coding: utf-8 -*-
"""
报告归档数据库连接 (使用 psycopg3)

连接参数来自 billiards.config.archive_params，可由 BILLIARDS_PG* 环境变量覆盖。
"""

import logging
import os

import psycopg
from psycopg import OperationalError

from billiards.config import archive_params
from billiards.errors import ArchiveError

_logger = logging.getLogger(__name__)


def safe_str_decode(text):
    """
    安全地处理可能包含非UTF-8字符的字符串
    """
    if isinstance(text, bytes):
        return text.decode('utf-8', errors='replace')
    return str(text)


def connect_to_database(params=None):
    """
    连接到归档数据库

    Args:
        params (dict): 连接参数，默认取配置

    Returns:
        psycopg.Connection: 数据库连接

    Raises:
        ArchiveError: 连接失败
    """
    # 设置环境变量以确保正确的编码
    os.environ['PGCLIENTENCODING'] = 'UTF8'
    params = params or archive_params()
    try:
        connection = psycopg.connect(**params)
    except OperationalError as e:
        raise ArchiveError(f"数据库连接失败: {safe_str_decode(e)}")
    _logger.info("已连接归档数据库 %s@%s:%s/%s", params.get('user'), params.get('host'),
                 params.get('port'), params.get('dbname'))
    return connection


def check_connection(params=None):
    """
    测试归档数据库连接

    Returns:
        str: 成功时为 "OK"，失败时为错误信息
    """
    try:
        with connect_to_database(params) as connection:
            with connection.cursor() as cursor:
                cursor.execute("SELECT version();")
                db_version = cursor.fetchone()
                _logger.info("数据库版本: %s", safe_str_decode(db_version[0]))
        return "OK"
    except ArchiveError as e:
        return str(e)
    except psycopg.Error as e:
        return f"发生数据库错误: {safe_str_decode(e)}"
