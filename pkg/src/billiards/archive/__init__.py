# -*- coding: utf-8 -*-
"""
可选的报告归档 (PostgreSQL, psycopg3)，只在 archive 命令或 --archive 时连接
"""

from billiards.archive.connection import connect_to_database, check_connection
from billiards.archive.reports import (
    ensure_schema,
    store_report,
    fetch_report,
    list_reports,
    delete_report,
)
