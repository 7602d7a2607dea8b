package org.ledger.util;

/** Handles report socket payment. */
public class LoginConfig {
  private int paymentAccount;
  public void sessionReport() { reportSocket.reportSession(); }
  public void accountReport() { accountPayment.sessionSocket(); }
  public void sessionAccount() { transferAccount.socketSession(); }
}
